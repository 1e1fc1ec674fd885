#include "fwguide/airspeed.hpp"

namespace fwguide {

WindExcessIncrement wind_excess_increment(double w, double lambda, double v_A, const AirspeedConfig &cfg,
		const FeasibilityParams &p, FeasibilityFn feas_fn)
{
	WindExcessIncrement out;
	const double dv_max = cfg.dv_max();

	switch (cfg.mode) {
	case CompensationMode::Disabled:
		return out;

	case CompensationMode::WindExcess:
	case CompensationMode::TrackKeeping:
		out.beta_eff = w / v_A;
		out.dw = sat(w - cfg.v_A_nom, 0.0, dv_max);
		break;

	case CompensationMode::MinGroundSpeed:
		out.beta_eff = (w + cfg.v_G_min) / v_A;
		out.dw = sat(w - cfg.v_A_nom + cfg.v_G_min, 0.0, dv_max);
		break;
	}

	out.dv_w = out.dw * (1.0 - feas_fn(out.beta_eff, lambda, p));
	return out;
}

double track_keeping_increment(double e_bar, double dw, double lambda, double beta, const AirspeedConfig &cfg,
			       const FeasibilityParams &p, FeasibilityFn feas_fn)
{
	if (cfg.mode != CompensationMode::TrackKeeping) {
		return 0.0;
	}

	const double k_e = sat(e_bar / cfg.e_bar_buf, 0.0, 1.0);
	const double k_w = sat(dw / cfg.dw_buf, 0.0, 1.0);
	return cfg.dv_e_max * k_e * k_w * (1.0 - feas_fn(beta, lambda, p));
}

double airspeed_reference(double dv_w, double dv_e, const AirspeedConfig &cfg)
{
	return cfg.v_A_nom + std::fmin(dv_w + dv_e, cfg.dv_max());
}

ForwardGroundSpeed forward_ground_speed(const Vec2 &v_G, const Vec2 &v_A_vec)
{
	const double n = v_A_vec.norm();

	if (n <= kEpsVec) {
		return {0.0, false};
	}

	return {dot(v_G, v_A_vec) / n, true};
}

} // namespace fwguide
