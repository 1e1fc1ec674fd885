#pragma once

// Lateral-directional path following guidance with explicit wind handling.
//
// A ground-relative bearing l_hat is built from the track error and path
// tangent, then converted to an airmass-relative heading reference l_A:
// rotated by the crab angle and a curvature feed-forward angle where the
// bearing is feasible, or pointed so as to minimize run-away where it is not.
// The two are blended by the bearing feasibility. The heading error drives a
// lateral acceleration command about the airspeed vector, allocated to a roll
// reference with the coordinated turn relation.

#include "fwguide/airspeed.hpp"
#include "fwguide/feasibility.hpp"
#include "fwguide/geom.hpp"
#include "fwguide/path.hpp"

#include <cstdint>
#include <string>

namespace fwguide {

struct GuidanceConfig {
	double k{0.11};      ///< proportional gain
	double k_mult{1.1};  ///< margin on the curvature gain bound, >= 1
	double T_b{7.0};     ///< look-ahead time constant [s]
	double v_G_co{1.0};  ///< ground speed cut-off for the track error boundary [m/s]
	FeasibilityParams feas;
	AirspeedConfig airspeed;
	double g{9.81};
	double phi_max{deg2rad(35.0)}; ///< roll reference limit [rad]
	double v_A_floor{2.0};         ///< below this airspeed outputs are held safe [m/s]

	friend bool operator==(const GuidanceConfig &, const GuidanceConfig &) = default;
};

/// Returns an empty string when cfg satisfies its invariants, otherwise a
/// description of the first violation ("<field>: <reason>").
std::string validate(const GuidanceConfig &cfg);

struct VehicleState {
	Vec2 r;   ///< position [m]
	Vec2 v_G; ///< ground velocity [m/s]

	Vec2 air_velocity(const Vec2 &wind) const { return v_G - wind; }
	double airspeed(const Vec2 &wind) const { return air_velocity(wind).norm(); }
	double heading(const Vec2 &wind) const { return angle_of(air_velocity(wind)); }
	double course() const { return angle_of(v_G); }
};

enum GuidanceFlag : std::uint32_t {
	kFlagNone = 0,
	kFlagDegeneratePath = 1u << 0,       ///< closest point ambiguous (circle center)
	kFlagDegenerateLookahead = 1u << 1,  ///< l_hat collapsed, fell back to tangent
	kFlagDegenerateInfeasible = 1u << 2, ///< infeasible numerator collapsed
	kFlagDegenerateBlend = 1u << 3,      ///< blended l_A collapsed
	kFlagInvalidAirspeed = 1u << 4,      ///< v_A below floor, outputs held
	kFlagCurvatureSaturated = 1u << 5,   ///< asin input in curvature rotation clipped
	kFlagRollSaturated = 1u << 6,
};

struct GuidanceTelemetry {
	double lambda{0.0};
	double beta{0.0};
	double beta_eff{0.0};
	double feas{1.0};
	double e_norm{0.0};
	double e_b{0.0};
	double e_bar{0.0};
	double theta_l{kHalfPi};
	double sigma_l{1.0};
	double x{0.0};
	double eta_c0{0.0};
	double eta_c{0.0};
	double eta_A{0.0};
	double k_adj{0.0};
	double curvature_asin_arg{0.0};
	double dv_w{0.0};
	double dv_e{0.0};
	Vec2 l_hat;
	Vec2 l_A;
	double infeasible_blend{0.0};
	std::uint32_t flags{kFlagNone};

	bool has(GuidanceFlag f) const { return (flags & f) != 0; }
};

struct GuidanceOutput {
	double roll_ref{0.0};
	double a_lat_ref{0.0}; ///< airmass-relative normal acceleration [m/s^2]
	double v_A_ref{0.0};
	GuidanceTelemetry telemetry;
};

/// Adaptive track error boundary [m].
double track_error_boundary(double v_G, double T_b, double v_G_co);

struct LookaheadAngle {
	double theta_l;
	double e_bar;
	double sigma_l;
};

LookaheadAngle lookahead_angle(double e_norm, double e_b);

struct LookaheadVector {
	Vec2 l_hat;
	bool degenerate{false};
};

LookaheadVector lookahead_vector(const Vec2 &e_hat, const Vec2 &t_hat, double theta_l);

/// Wind triangle evaluated as if on the path moving along its tangent.
struct OnTrackWindTriangle {
	double lambda0{0.0};
	double x0{0.0};
	double y0{kPi};
	double v_G0{0.0};
	double beta{0.0};
};

OnTrackWindTriangle wind_triangle_on_track(const Vec2 &w, double v_A, const Vec2 &t_hat);

/// Crab angle converting a ground-relative bearing to a heading.
double airmass_rotation(double beta, double lambda);

struct CurvatureRotation {
	double eta_c0{0.0};
	double eta_c{0.0};
	double asin_arg{0.0}; ///< unsaturated argument of the on-track arcsine
	bool saturated{false};
};

/// Floor on the denominator of the crab-rate term.
inline constexpr double kCurvatureDenFloor = 1e-4;

CurvatureRotation curvature_rotation(const OnTrackWindTriangle &wt, double beta, double lambda, double kappa_P,
				     double v_A, double k_adj, double sigma_l, const FeasibilityParams &p,
				     FeasibilityFn feas_fn = buffered_feasibility);

double adaptive_gain(double k, double k_mult, double beta, double kappa_P, double sigma_l);

struct InfeasibleLookahead {
	Vec2 l_A;
	bool degenerate{false};
};

InfeasibleLookahead infeasible_lookahead(const Vec2 &l_hat, const Vec2 &w, double v_A);

/// Normalized linear interpolation l_A = |f l_feas + (1 - f) l_infeas|.
/// Falls back to l_infeas if the blend collapses.
LookaheadVector blend_lookahead(const Vec2 &l_feas, const Vec2 &l_infeas, double f);

/// One evaluation of the guidance law. Pure; w is the wind estimate.
GuidanceOutput guidance_step(const VehicleState &state, const Vec2 &w, const PathRef &path,
			     const GuidanceConfig &cfg);

/// Same pipeline with a substitute feasibility function.
GuidanceOutput guidance_step(const VehicleState &state, const Vec2 &w, const PathRef &path,
			     const GuidanceConfig &cfg, FeasibilityFn feas_fn);

} // namespace fwguide
