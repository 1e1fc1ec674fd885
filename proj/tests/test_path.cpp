#include "fwguide/path.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace fwguide;

TEST_CASE("line projection")
{
	const PathProjection p = project(LinePath{{0, 0}, {1, 0}}, {3, -2});
	CHECK(p.closest_point == Vec2{3, 0});
	CHECK(p.tangent == Vec2{1, 0});
	CHECK(p.track_error == Vec2{0, 2});
	CHECK(p.curvature == 0.0);
	CHECK_FALSE(p.degenerate);
}

TEST_CASE("circle projection")
{
	const PathProjection ccw = project(CirclePath{{0, 0}, 50, TurnDirection::CCW}, {100, 0});
	CHECK(ccw.closest_point.x == doctest::Approx(50));
	CHECK(ccw.closest_point.y == doctest::Approx(0));
	CHECK(ccw.tangent.x == doctest::Approx(0));
	CHECK(ccw.tangent.y == doctest::Approx(1));
	CHECK(ccw.curvature == doctest::Approx(0.02));
	CHECK(ccw.track_error.x == doctest::Approx(-50));

	const PathProjection cw = project(CirclePath{{0, 0}, 50, TurnDirection::CW}, {0, 25});
	CHECK(cw.closest_point.x == doctest::Approx(0));
	CHECK(cw.closest_point.y == doctest::Approx(50));
	CHECK(cw.tangent.x == doctest::Approx(1));
	CHECK(cw.tangent.y == doctest::Approx(0));
	CHECK(cw.curvature == doctest::Approx(-0.02));
	CHECK(cw.track_error.y == doctest::Approx(25));
}

TEST_CASE("circle centre is degenerate")
{
	const PathProjection p = project(CirclePath{{1, 2}, 10, TurnDirection::CCW}, {1, 2});
	CHECK(p.degenerate);
	CHECK(p.closest_point.x == doctest::Approx(11));
	CHECK(p.closest_point.y == doctest::Approx(2));
	CHECK(p.tangent.norm() == doctest::Approx(1.0));
}

TEST_CASE("constructors validate")
{
	CHECK_THROWS_AS(make_circle({0, 0}, 0.5, TurnDirection::CW), std::invalid_argument);
	CHECK_THROWS_AS(make_circle({0, 0}, -5, TurnDirection::CW), std::invalid_argument);
	CHECK_NOTHROW(make_circle({0, 0}, kMinCircleRadius, TurnDirection::CW));
	CHECK_THROWS_AS(make_line({0, 0}, {0, 0}), std::invalid_argument);

	const LinePath l = make_line({0, 0}, {3, 4});
	CHECK(l.direction.norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("projection is the closest point against brute force")
{
	std::mt19937_64 rng(11);
	std::uniform_real_distribution<double> u(-300.0, 300.0);
	const CirclePath circle{{10, -20}, 75, TurnDirection::CW};
	const LinePath line = make_line({5, 5}, {1, 2});

	for (int trial = 0; trial < 20; ++trial) {
		const Vec2 r{u(rng), u(rng)};

		const PathProjection pc = project(circle, r);
		const PathProjection pl = project(line, r);
		const double dc = (pc.closest_point - r).norm();
		const double dl = (pl.closest_point - r).norm();

		CHECK(pc.tangent.norm() == doctest::Approx(1.0));
		CHECK(std::fabs(dot(pl.track_error, pl.tangent)) < 1e-9);
		CHECK(std::fabs(cross(pc.track_error, pc.closest_point - circle.center)) < 1e-6);

		for (int k = 0; k < 10000; ++k) {
			const double a = 2.0 * kPi * k / 10000.0;
			const Vec2 qc = circle.center + circle.radius * from_angle(a);
			const Vec2 ql = line.origin + (u(rng) * 3.0) * line.direction;
			REQUIRE(dc <= (qc - r).norm() + 1e-9);
			REQUIRE(dl <= (ql - r).norm() + 1e-9);
		}
	}
}
