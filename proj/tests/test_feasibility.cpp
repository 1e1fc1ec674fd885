#include "fwguide/feasibility.hpp"
#include "fwguide/geom.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace fwguide;

namespace {

const FeasibilityParams kDefaults;

}

TEST_CASE("bearing_infeasible")
{
	for (double l = -kPi; l <= kPi; l += 0.1) {
		CHECK_FALSE(bearing_infeasible(0.5, l));
	}

	CHECK(bearing_infeasible(2.0, kPi));
	CHECK(bearing_infeasible(2.0, kPi / 4.0));
	CHECK_FALSE(bearing_infeasible(2.0, 0.4));
	CHECK_FALSE(bearing_infeasible(1.0, kPi));
	CHECK(bearing_infeasible(1.0 + 1e-12, kPi));
}

TEST_CASE("feas_legacy")
{
	CHECK(feas_legacy(0.7, 0.0) == 1.0);
	CHECK(feas_legacy(1.0, kPi / 4.0) == doctest::Approx(1.0).epsilon(1e-12));

	// sqrt(1 - (1.05 sin 1.2)^2) / cos 1.2
	const double s = 1.05 * std::sin(1.2);
	const double want = std::sqrt(1.0 - s * s) / std::cos(1.2);
	CHECK(want == doctest::Approx(0.567330).epsilon(1e-6));
	CHECK(feas_legacy(1.05, 1.2) == doctest::Approx(want).epsilon(1e-14));

	CHECK(feas_legacy(2.0, kPi) == 0.0);
	CHECK(feas_legacy(0.9, kHalfPi) == 1.0);
	CHECK(feas_legacy(1.1, kHalfPi) == 0.0);
}

TEST_CASE("feas_legacy jumps at beta = 1 behind the wind")
{
	CHECK(feas_legacy(1.0, kPi) == 1.0);
	CHECK(feas_legacy(1.0 + 1e-9, kPi) == 0.0);
}

TEST_CASE("beta_limits")
{
	const auto a = beta_limits(kHalfPi, kDefaults);
	CHECK(a.minus == doctest::Approx(0.9).epsilon(1e-14));
	CHECK(a.plus == doctest::Approx(1.0).epsilon(1e-14));

	const auto b = beta_limits(kPi / 6.0, kDefaults);
	CHECK(b.minus == doctest::Approx(1.0).epsilon(1e-14));
	CHECK(b.plus == doctest::Approx(2.0).epsilon(1e-14));

	const auto c = beta_limits(0.0, kDefaults);
	const auto [o_minus, o_plus] = oracle::beta_limits(0.0, 0.1, oracle::pi / 180.0);
	CHECK(o_plus == doctest::Approx(114.5916).epsilon(1e-6));
	CHECK(o_minus == doctest::Approx(12.2592).epsilon(1e-5));
	CHECK(c.plus == doctest::Approx(o_plus).epsilon(1e-13));
	CHECK(c.minus == doctest::Approx(o_minus).epsilon(1e-13));

	for (double lb = 0.0; lb <= kHalfPi; lb += 0.001) {
		const auto l = beta_limits(lb, kDefaults);
		CHECK(l.minus < l.plus);
	}
}

TEST_CASE("beta_limits continuous at the cut-off")
{
	const double lco = kDefaults.lambda_co;
	const auto below = beta_limits(lco - 1e-12, kDefaults);
	const auto at = beta_limits(lco, kDefaults);
	CHECK(below.plus == doctest::Approx(at.plus).epsilon(1e-9));
}

TEST_CASE("feas examples")
{
	CHECK(feas(0.80, kHalfPi, kDefaults) == 1.0);
	CHECK(feas(0.95, kHalfPi, kDefaults) == doctest::Approx(0.5).epsilon(1e-12));
	CHECK(feas(1.05, kHalfPi, kDefaults) == 0.0);
}

TEST_CASE("feas range, coverage and monotonicity")
{
	std::mt19937_64 rng(9);
	std::uniform_real_distribution<double> ub(0.0, 3.0);
	std::uniform_real_distribution<double> ul(-kPi, kPi);

	for (int i = 0; i < 200000; ++i) {
		const double b = ub(rng);
		const double l = ul(rng);
		const double f = feas(b, l, kDefaults);
		REQUIRE(f >= 0.0);
		REQUIRE(f <= 1.0);

		if (bearing_infeasible(b, l) && lambda_bar(l) >= kDefaults.lambda_co) {
			REQUIRE(f == 0.0);
		}

		// non-increasing in beta
		REQUIRE(feas(b + 1e-3, l, kDefaults) <= f);
	}

	// non-increasing in lambda_bar on [lambda_co, pi/2] for beta >= 1
	for (double b = 1.0; b <= 3.0; b += 0.05) {
		double prev = 1.0;

		for (double lb = kDefaults.lambda_co; lb <= kHalfPi; lb += 1e-3) {
			const double f = feas(b, lb, kDefaults);
			REQUIRE(f <= prev);
			prev = f;
		}
	}
}

TEST_CASE("feas has no jump at beta = 1 behind the wind")
{
	CHECK(feas(1.0, kPi, kDefaults) == 0.0);

	double prev = 0.0;

	for (int i = 0; i <= 100; ++i) {
		const double f = feas(1.0 - kDefaults.beta_buf * (i / 100.0), kPi, kDefaults);
		CHECK(f >= prev);
		CHECK(f - prev < 0.03);
		prev = f;
	}

	CHECK(prev == doctest::Approx(1.0));
}

TEST_CASE("feas is symmetric in lambda")
{
	for (double l = 0.0; l < kPi; l += 0.01) {
		CHECK(feas(1.0, l, kDefaults) == feas(1.0, -l, kDefaults));
	}
}

TEST_CASE("single precision instantiation")
{
	const BasicFeasibilityParams<float> pf;
	CHECK(feas(0.95f, static_cast<float>(kHalfPi), pf) == doctest::Approx(0.5f).epsilon(1e-5));
	CHECK(pf.valid());
}
