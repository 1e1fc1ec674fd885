#pragma once

// Data-parallel evaluation kernels. Each kernel has an OpenMP version and a
// serial reference with identical per-element arithmetic; results agree
// bit-for-bit and the serial versions exist for testing and benchmarking.

#include "fwguide/airspeed.hpp"
#include "fwguide/feasibility.hpp"
#include "fwguide/guidance.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fwguide {

/// Evenly spaced samples min..max inclusive.
struct Grid1D {
	double min{0.0};
	double max{1.0};
	std::size_t count{2};

	double at(std::size_t i) const
	{
		return count < 2 ? min : min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
	}

	double step() const { return count < 2 ? 0.0 : (max - min) / static_cast<double>(count - 1); }

	friend bool operator==(const Grid1D &, const Grid1D &) = default;
};

// --- feasibility grid ------------------------------------------------------

/// Row-major [i_lambda][i_beta] table of feas(beta, lambda).
template <std::floating_point T>
struct FeasibilityTable {
	Grid1D lambda;
	Grid1D beta;
	std::vector<T> values;

	T operator()(std::size_t i_lambda, std::size_t i_beta) const { return values[i_lambda * beta.count + i_beta]; }
};

template <std::floating_point T>
FeasibilityTable<T> feasibility_table(const Grid1D &lambda, const Grid1D &beta, const BasicFeasibilityParams<T> &p);

template <std::floating_point T>
FeasibilityTable<T> feasibility_table_serial(const Grid1D &lambda, const Grid1D &beta,
		const BasicFeasibilityParams<T> &p);

/// Table of an arbitrary double-precision feasibility function.
FeasibilityTable<double> feasibility_table(const Grid1D &lambda, const Grid1D &beta, const FeasibilityParams &p,
		FeasibilityFn feas_fn);

// --- steady-state airspeed compensation ------------------------------------

struct SteadyAirspeed {
	double v_A_ref{0.0};
	double v_G_fwd{0.0};
	int iterations{0};
	bool converged{false};
};

inline constexpr double kSteadyTol = 1e-6;
inline constexpr int kSteadyMaxIter = 100;

/// Fixed point v_A = v_A_ref(v_A) of the wind-excess compensation for a wind
/// of speed w and a bearing at lambda from it, with the heading reference
/// assumed perfectly tracked (no track-error increment). The root always lies
/// in [v_A_nom, v_A_max]; it is found by Illinois regula falsi on that bracket,
/// since plain substitution v_A <- v_A_ref can contract arbitrarily slowly.
/// Converged when |v_A_ref(v) - v| <= tol; iterations counts evaluations.
SteadyAirspeed steady_airspeed(double w, double lambda, const AirspeedConfig &cfg, const FeasibilityParams &p,
			       double tol = kSteadyTol, int max_iter = kSteadyMaxIter);

/// Forward ground speed at airspeed v_A with the steady heading reference
/// the guidance would command for the bearing at lambda from the wind.
double steady_forward_ground_speed(double w, double lambda, double v_A, const AirspeedConfig &cfg,
				   const FeasibilityParams &p);

struct AirspeedMapSpec {
	Grid1D wind{0.0, 16.0, 161};
	Grid1D lambda{0.0, kPi, 181};
	AirspeedConfig airspeed{10.0, 12.5, 0.5, 0.5, 3.0, CompensationMode::MinGroundSpeed, 3.0};
	FeasibilityParams feas;
	double tol{kSteadyTol};
	int max_iter{kSteadyMaxIter};

	friend bool operator==(const AirspeedMapSpec &, const AirspeedMapSpec &) = default;
};

struct AirspeedMapCell {
	double w;
	double lambda;
	SteadyAirspeed no_min;   ///< v_G_min = 0 (wind excess regulation only)
	SteadyAirspeed with_min; ///< v_G_min from the map settings
};

/// Row-major [i_wind][i_lambda].
struct AirspeedMap {
	AirspeedMapSpec spec;
	std::vector<AirspeedMapCell> cells;

	const AirspeedMapCell &operator()(std::size_t i_wind, std::size_t i_lambda) const
	{
		return cells[i_wind * spec.lambda.count + i_lambda];
	}
};

AirspeedMap airspeed_map(const AirspeedMapSpec &spec);
AirspeedMap airspeed_map_serial(const AirspeedMapSpec &spec);

// --- batched guidance --------------------------------------------------------

struct GuidanceCase {
	VehicleState state;
	Vec2 wind;
	PathRef path;
};

void guidance_batch(std::span<const GuidanceCase> cases, const GuidanceConfig &cfg, std::span<GuidanceOutput> out,
		    FeasibilityFn feas_fn = buffered_feasibility);

void guidance_batch_serial(std::span<const GuidanceCase> cases, const GuidanceConfig &cfg,
			   std::span<GuidanceOutput> out, FeasibilityFn feas_fn = buffered_feasibility);

} // namespace fwguide
