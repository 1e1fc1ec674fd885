#include "fwguide/geom.hpp"

#include <doctest.h>

#include <random>

using namespace fwguide;

TEST_CASE("signed_angle")
{
	CHECK(signed_angle({1, 0}, {0, 1}) == doctest::Approx(kHalfPi).epsilon(1e-15));
	CHECK(signed_angle({1, 0}, {1, 0}) == 0.0);
	CHECK(signed_angle({0, 1}, {1, 0}) == doctest::Approx(-kHalfPi).epsilon(1e-15));

	// just below the branch cut
	const double eps = 1e-9;
	CHECK(signed_angle({1, 0}, {-1, -eps}) == doctest::Approx(-kPi + eps).epsilon(1e-15));
	CHECK(signed_angle({1, 0}, {-1, 0}) == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("signed_angle degenerate inputs return zero")
{
	CHECK(signed_angle({0, 0}, {1, 0}) == 0.0);
	CHECK(signed_angle({1, 0}, {1e-7, 0}) == 0.0);
}

TEST_CASE("signed_angle matches wrapped difference and is antisymmetric")
{
	std::mt19937_64 rng(3);
	std::uniform_real_distribution<double> ang(-10.0, 10.0);

	for (int i = 0; i < 10000; ++i) {
		const double a = ang(rng);
		const double b = ang(rng);
		const double s = signed_angle(from_angle(a), from_angle(b));
		CHECK(std::fabs(wrap_pi(s - wrap_pi(b - a))) < 1e-12);
		CHECK(signed_angle(from_angle(b), from_angle(a)) == doctest::Approx(-s).epsilon(1e-12));
	}
}

TEST_CASE("wrap_pi")
{
	CHECK(wrap_pi(kPi) == kPi);
	CHECK(wrap_pi(-kPi) == kPi);
	CHECK(wrap_pi(3.0 * kPi) == doctest::Approx(kPi));
	CHECK(wrap_pi(0.5) == 0.5);

	for (double a = -20.0; a < 20.0; a += 0.37) {
		const double w = wrap_pi(a);
		CHECK(w > -kPi);
		CHECK(w <= kPi);
		CHECK(wrap_pi(w) == w);
		CHECK(wrap_pi(a + 2.0 * kPi) == doctest::Approx(w).epsilon(1e-12));
	}
}

TEST_CASE("rot")
{
	const Vec2 a = rot({1, 0}, kHalfPi);
	CHECK(a.x == doctest::Approx(0.0).epsilon(1e-15));
	CHECK(a.y == doctest::Approx(1.0));
	CHECK(rot({1, 0}, 0.0) == Vec2{1, 0});

	const Vec2 b = rot({0.6, 0.8}, kPi);
	CHECK(b.x == doctest::Approx(-0.6));
	CHECK(b.y == doctest::Approx(-0.8));
}

TEST_CASE("rot preserves norm and inverts")
{
	std::mt19937_64 rng(5);
	std::uniform_real_distribution<double> u(-1e3, 1e3);
	std::uniform_real_distribution<double> ang(-kPi, kPi);
	const double ulp = std::numeric_limits<double>::epsilon();

	for (int i = 0; i < 10000; ++i) {
		Vec2 v{u(rng), u(rng)};

		if (v.norm() > 1e3) {
			v = (1e3 / v.norm()) * v;
		}

		const double a = ang(rng);
		const Vec2 r = rot(v, a);
		CHECK(std::fabs(r.norm() - v.norm()) <= 4.0 * ulp * std::fmax(v.norm(), 1.0));

		const Vec2 back = rot(r, -a);
		CHECK((back - v).norm() <= 1e-12 * std::fmax(v.norm(), 1.0));
	}
}

TEST_CASE("sat")
{
	CHECK(sat(0.5, 0.0, 1.0) == 0.5);
	CHECK(sat(-3.0, 0.0, 1.0) == 0.0);
	CHECK(sat(7.0, 0.0, 1.0) == 1.0);
	CHECK(sat(sat(7.0, 0.0, 1.0), 0.0, 1.0) == 1.0);
}

TEST_CASE("unit of a tiny vector is zero")
{
	CHECK(Vec2{1e-7, 0}.unit() == Vec2{0, 0});
	CHECK(Vec2{3, 4}.unit().x == doctest::Approx(0.6));
	CHECK(angle_of({0, 0}) == 0.0);
}
