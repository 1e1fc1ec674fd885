#pragma once

// Airspeed reference compensation for excess wind. The reference is raised
// above nominal only as far as needed to hold the vehicle against the wind
// (wind excess regulation), to return it to the track (track keeping) or to
// hold a minimum forward ground speed.

#include "fwguide/feasibility.hpp"
#include "fwguide/geom.hpp"

namespace fwguide {

enum class CompensationMode { Disabled, WindExcess, TrackKeeping, MinGroundSpeed };

struct AirspeedConfig {
	double v_A_nom{8.8};   ///< nominal airspeed reference [m/s]
	double v_A_max{15.0};  ///< maximum airspeed reference [m/s]
	double e_bar_buf{0.5}; ///< normalized track error at which the full track increment applies
	double dw_buf{0.5};    ///< wind excess ramp for the track increment [m/s]
	double dv_e_max{3.0};  ///< maximum track-error increment [m/s]
	CompensationMode mode{CompensationMode::WindExcess};
	double v_G_min{0.0};   ///< minimum forward ground speed, MinGroundSpeed mode only [m/s]

	double dv_max() const { return std::fmax(v_A_max - v_A_nom, 0.0); }

	friend bool operator==(const AirspeedConfig &, const AirspeedConfig &) = default;
};

struct WindExcessIncrement {
	double dv_w{0.0};     ///< airspeed increment from wind excess [m/s]
	double dw{0.0};       ///< saturated wind excess [m/s]
	double beta_eff{0.0}; ///< wind ratio used for feasibility (raised by v_G_min)
};

/// Wind-excess increment. lambda is the bearing angle from the wind.
WindExcessIncrement wind_excess_increment(double w, double lambda, double v_A, const AirspeedConfig &cfg,
		const FeasibilityParams &p, FeasibilityFn feas_fn = buffered_feasibility);

/// Track-error increment; zero outside TrackKeeping mode.
double track_keeping_increment(double e_bar, double dw, double lambda, double beta, const AirspeedConfig &cfg,
			       const FeasibilityParams &p, FeasibilityFn feas_fn = buffered_feasibility);

/// v_A_nom plus the summed increments, capped at v_A_max.
double airspeed_reference(double dv_w, double dv_e, const AirspeedConfig &cfg);

struct ForwardGroundSpeed {
	double value{0.0};
	bool valid{true};
};

/// Ground velocity projected on the airspeed direction; negative when
/// flying backwards over ground.
ForwardGroundSpeed forward_ground_speed(const Vec2 &v_G, const Vec2 &v_A_vec);

} // namespace fwguide
