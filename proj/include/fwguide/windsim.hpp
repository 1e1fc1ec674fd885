#pragma once

// Closed-loop planar flight simulation: kinematic fixed-wing with first-order,
// rate-limited roll and airspeed loops, a scriptable wind field and zero-order
// hold of the guidance commands between updates.

#include "fwguide/guidance.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

namespace fwguide {

struct SimConfig {
	double dt{0.005};                   ///< physics step [s]
	double guidance_rate{50.0};         ///< [Hz]
	double tau_roll{0.3};               ///< [s]
	double tau_airspeed{1.5};           ///< [s]
	double phi_max{deg2rad(35.0)};      ///< [rad]
	double roll_rate_max{deg2rad(90.0)}; ///< [rad/s]
	double accel_limit{2.0};            ///< |dv_A/dt| limit [m/s^2]
	double g{9.81};
	double duration{60.0};              ///< [s]
	double wind_estimator_tau{0.0};     ///< first-order estimate lag [s]; 0 = exact wind
	std::uint64_t seed{0};

	friend bool operator==(const SimConfig &, const SimConfig &) = default;
};

std::string validate(const SimConfig &cfg);

struct ConstantWind {
	Vec2 w;
	friend bool operator==(const ConstantWind &, const ConstantWind &) = default;
};

struct RampKnot {
	double t;
	Vec2 w;
	friend bool operator==(const RampKnot &, const RampKnot &) = default;
};

/// Linear interpolation between knots, held constant outside them.
struct PiecewiseRampWind {
	std::vector<RampKnot> knots;
	friend bool operator==(const PiecewiseRampWind &, const PiecewiseRampWind &) = default;
};

/// base + amplitude * (1 - cos(2 pi (t - t0) / period)) / 2 on [t0, t0 + period].
struct GustWind {
	Vec2 base;
	Vec2 amplitude;
	double t0{0.0};
	double period{1.0};
	friend bool operator==(const GustWind &, const GustWind &) = default;
};

/// base plus an independent first-order Gauss-Markov process per axis.
struct NoiseWind {
	Vec2 base;
	double sigma{1.0};
	double correlation_time{2.0};
	std::uint64_t seed{0};
	friend bool operator==(const NoiseWind &, const NoiseWind &) = default;
};

using WindField = std::variant<ConstantWind, PiecewiseRampWind, GustWind, NoiseWind>;

std::string validate(const WindField &field);

/// Evaluates a wind field in time. Noise is generated lazily on a fixed grid
/// and interpolated, so a sampler is bound to one run; it is reproducible
/// from (field, run seed).
class WindSampler {
public:
	static constexpr double kNoiseStep = 0.01;

	WindSampler(WindField field, std::uint64_t run_seed);

	Vec2 at(double t);

private:
	void extend_noise(std::size_t n);

	WindField _field;
	std::mt19937_64 _rng;
	std::normal_distribution<double> _normal{0.0, 1.0};
	std::vector<Vec2> _noise;
};

struct SimState {
	Vec2 r;
	double xi{0.0};  ///< heading [rad]
	double phi{0.0}; ///< roll [rad]
	double v_A{10.0};

	friend bool operator==(const SimState &, const SimState &) = default;
};

class SimulationError : public std::runtime_error {
public:
	SimulationError(const std::string &what, double t) : std::runtime_error(what), _t(t) {}
	double time() const { return _t; }

private:
	double _t;
};

struct StateDerivative {
	Vec2 r_dot;
	double xi_dot;
	double phi_dot;
	double v_A_dot;
};

StateDerivative derivative(const SimState &s, const GuidanceOutput &cmd, const Vec2 &wind, const SimConfig &cfg);

/// One fourth-order Runge-Kutta step with the wind held over the step.
/// Throws SimulationError (time = -1) on a non-finite result.
SimState step(const SimState &state, const GuidanceOutput &cmd, const Vec2 &wind, const SimConfig &cfg, double dt);

struct SimScenario {
	PathRef path{LinePath{}};
	WindField wind{ConstantWind{}};
	SimState initial;
	GuidanceConfig guidance;
	SimConfig sim;

	friend bool operator==(const SimScenario &, const SimScenario &) = default;
};

/// One row per guidance update. The columns written to CSV come first; the
/// remainder is kept for analysis only.
struct SimLogRow {
	double t;
	Vec2 r;
	Vec2 v_G;
	double v_A;
	double xi;
	double phi;
	double roll_ref;
	double v_A_ref;
	double e_norm;
	double feas;
	double lambda;
	double beta;
	double v_G_fwd;
	Vec2 wind;

	Vec2 wind_est;
	double a_lat_ref;
	double ref_heading; ///< direction of l_A
	double e_bar;
	double sigma_l;
	double dv_w;
	double dv_e;
	double curvature_asin_arg;
	std::uint32_t flags;
};

struct SimLog {
	double guidance_period{0.02};
	std::vector<SimLogRow> rows;
};

/// Runs the closed loop for sim.duration. Deterministic for a given scenario.
/// Throws std::invalid_argument on an invalid scenario and SimulationError on
/// a non-finite state.
SimLog run(const SimScenario &scenario, FeasibilityFn feas_fn = buffered_feasibility);

inline constexpr const char *kSimLogCsvHeader =
	"t,r_x,r_y,v_G_x,v_G_y,v_A,xi,phi,roll_ref,v_A_ref,e_norm,feas,lambda,beta,v_G_fwd,wind_x,wind_y";

void write_csv(const SimLog &log, std::ostream &os);

} // namespace fwguide
