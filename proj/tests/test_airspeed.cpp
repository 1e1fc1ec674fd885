#include "fwguide/airspeed.hpp"

#include <doctest.h>

using namespace fwguide;

namespace {

const FeasibilityParams kP;

AirspeedConfig map_config(CompensationMode mode, double v_G_min = 0.0)
{
	return {10.0, 12.5, 0.5, 0.5, 3.0, mode, v_G_min};
}

} // namespace

TEST_CASE("wind_excess_increment")
{
	const AirspeedConfig table;
	CHECK(wind_excess_increment(8.0, kPi, 8.8, table, kP).dv_w == 0.0);

	// fully infeasible: the whole 1.2 m/s excess is added
	const WindExcessIncrement a = wind_excess_increment(10.0, kPi, 8.8, table, kP);
	CHECK(a.dw == doctest::Approx(1.2).epsilon(1e-14));
	CHECK(a.dv_w == doctest::Approx(1.2).epsilon(1e-14));

	AirspeedConfig off = table;
	off.mode = CompensationMode::Disabled;
	const WindExcessIncrement z = wind_excess_increment(10.0, kPi, 8.8, off, kP);
	CHECK(z.dv_w == 0.0);
	CHECK(z.dw == 0.0);
}

TEST_CASE("minimum ground speed imitates a stronger wind")
{
	const WindExcessIncrement m = wind_excess_increment(9.0, kPi, 12.0, map_config(CompensationMode::MinGroundSpeed, 3.0), kP);
	CHECK(m.beta_eff == doctest::Approx(1.0).epsilon(1e-15));
	CHECK(m.dw == doctest::Approx(2.0).epsilon(1e-15));
	CHECK(m.dv_w == doctest::Approx(2.0).epsilon(1e-15));
	CHECK(airspeed_reference(m.dv_w, 0.0, map_config(CompensationMode::MinGroundSpeed, 3.0)) == doctest::Approx(12.0));
}

TEST_CASE("track_keeping_increment")
{
	AirspeedConfig cfg;
	cfg.mode = CompensationMode::TrackKeeping;
	CHECK(track_keeping_increment(0.0, 0.5, kPi, 2.0, cfg, kP) == 0.0);
	CHECK(track_keeping_increment(0.3, 0.5, kPi, 0.2, cfg, kP) == 0.0);
	CHECK(track_keeping_increment(0.25, 0.5, kPi, 2.0, cfg, kP) == doctest::Approx(1.5).epsilon(1e-14));

	cfg.mode = CompensationMode::MinGroundSpeed;
	CHECK(track_keeping_increment(0.25, 0.5, kPi, 2.0, cfg, kP) == 0.0);
	cfg.mode = CompensationMode::WindExcess;
	CHECK(track_keeping_increment(0.25, 0.5, kPi, 2.0, cfg, kP) == 0.0);
}

TEST_CASE("airspeed_reference")
{
	const AirspeedConfig table;
	CHECK(airspeed_reference(0.0, 0.0, table) == 8.8);
	CHECK(airspeed_reference(1.2, 1.5, table) == doctest::Approx(11.5).epsilon(1e-14));
	CHECK(airspeed_reference(5.0, 3.0, table) == doctest::Approx(15.0).epsilon(1e-14));

	AirspeedConfig flat = table;
	flat.v_A_max = flat.v_A_nom;
	CHECK(flat.dv_max() == 0.0);
	CHECK(airspeed_reference(5.0, 3.0, flat) == flat.v_A_nom);
}

TEST_CASE("forward_ground_speed")
{
	CHECK(forward_ground_speed({3, 4}, {1, 0}).value == 3.0);
	CHECK(forward_ground_speed({-2, 0}, {5, 0}).value == -2.0);
	CHECK(forward_ground_speed({0, 0}, {0, 7}).value == 0.0);

	const ForwardGroundSpeed bad = forward_ground_speed({3, 4}, {0, 0});
	CHECK_FALSE(bad.valid);
	CHECK(bad.value == 0.0);
}

TEST_CASE("no increment deep inside the feasible cone")
{
	const AirspeedConfig cfg = map_config(CompensationMode::MinGroundSpeed, 3.0);

	for (double w = 0.0; w <= 16.0; w += 0.25) {
		for (double l = 0.0; l <= kPi; l += 0.01) {
			const WindExcessIncrement inc = wind_excess_increment(w, l, cfg.v_A_nom, cfg, kP);
			const double lb = lambda_bar(l);

			if (inc.beta_eff <= beta_limits(lb, kP).minus) {
				REQUIRE(airspeed_reference(inc.dv_w, 0.0, cfg) == cfg.v_A_nom);
			}
		}
	}
}

TEST_CASE("airspeed reference is continuous in w, lambda and e_bar")
{
	AirspeedConfig cfg;
	cfg.mode = CompensationMode::TrackKeeping;
	const double v_A = 10.0;
	const double h = 1e-4;
	double worst = 0.0;

	const auto ref = [&](double w, double l, double e_bar) {
		const WindExcessIncrement inc = wind_excess_increment(w, l, v_A, cfg, kP);
		return airspeed_reference(inc.dv_w, track_keeping_increment(e_bar, inc.dw, l, w / v_A, cfg, kP), cfg);
	};

	for (double w = 0.0; w <= 16.0; w += 0.1) {
		for (double l = -kPi; l <= kPi; l += 0.05) {
			for (double e = 0.0; e <= 1.0; e += 0.25) {
				const double base = ref(w, l, e);
				worst = std::fmax(worst, std::fabs(ref(w + h, l, e) - base));
				worst = std::fmax(worst, std::fabs(ref(w, l + h, e) - base));
				worst = std::fmax(worst, std::fabs(ref(w, l, e + h) - base));
			}
		}
	}

	// a finite slope bound: no jumps anywhere on the grid
	CHECK(worst < 1000.0 * h);
}
