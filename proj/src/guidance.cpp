#include "fwguide/guidance.hpp"

namespace fwguide {

std::string validate(const GuidanceConfig &cfg)
{
	const AirspeedConfig &as = cfg.airspeed;

	if (!(cfg.k > 0.0)) { return "k: must be > 0"; }
	if (!(cfg.k_mult >= 1.0)) { return "k_mult: must be >= 1"; }
	if (!(cfg.T_b > 0.0)) { return "T_b: must be > 0"; }
	if (!(cfg.v_G_co > 0.0)) { return "v_G_co: must be > 0"; }
	if (!(cfg.feas.beta_buf > 0.0 && cfg.feas.beta_buf < 1.0)) { return "beta_buf: must be in (0, 1)"; }
	if (!(cfg.feas.lambda_co > 0.0 && cfg.feas.lambda_co < kHalfPi)) { return "lambda_co: must be in (0, pi/2)"; }
	if (!(cfg.g > 0.0)) { return "g: must be > 0"; }
	if (!(cfg.phi_max > 0.0 && cfg.phi_max < kHalfPi)) { return "phi_max: must be in (0, pi/2)"; }
	if (!(cfg.v_A_floor >= 0.0)) { return "v_A_floor: must be >= 0"; }
	if (!(as.v_A_nom > 0.0)) { return "v_A_nom: must be > 0"; }
	if (!(as.v_A_max >= as.v_A_nom)) { return "v_A_max: must be >= v_A_nom"; }
	if (!(as.e_bar_buf > 0.0 && as.e_bar_buf <= 1.0)) { return "e_bar_buf: must be in (0, 1]"; }
	if (!(as.dw_buf > 0.0)) { return "dw_buf: must be > 0"; }
	if (!(as.dv_e_max >= 0.0)) { return "dv_e_max: must be >= 0"; }
	if (!(as.v_G_min >= 0.0)) { return "v_G_min: must be >= 0"; }

	return {};
}

double track_error_boundary(double v_G, double T_b, double v_G_co)
{
	if (v_G < v_G_co) {
		return T_b / (2.0 * v_G_co) * v_G * v_G + 0.5 * T_b * v_G_co;
	}

	return T_b * v_G;
}

LookaheadAngle lookahead_angle(double e_norm, double e_b)
{
	const double e_bar = sat(e_norm / e_b, 0.0, 1.0);
	const double one_minus = 1.0 - e_bar;
	const double theta_l = kHalfPi * one_minus * one_minus;
	const double s = std::sin(theta_l);
	return {theta_l, e_bar, s * s};
}

LookaheadVector lookahead_vector(const Vec2 &e_hat, const Vec2 &t_hat, double theta_l)
{
	const Vec2 l = std::cos(theta_l) * e_hat + std::sin(theta_l) * t_hat;
	const double n = l.norm();

	if (n < kEpsVec) {
		return {t_hat, true};
	}

	return {l * (1.0 / n), false};
}

OnTrackWindTriangle wind_triangle_on_track(const Vec2 &w, double v_A, const Vec2 &t_hat)
{
	const double w_speed = w.norm();

	if (w_speed <= kEpsVec) {
		return {0.0, 0.0, kPi, v_A, 0.0};
	}

	OnTrackWindTriangle wt;
	wt.beta = w_speed / v_A;
	wt.lambda0 = signed_angle(w, t_hat);
	wt.x0 = std::asin(sat(wt.beta * std::sin(wt.lambda0), -1.0, 1.0));
	wt.y0 = kPi - std::fabs(wt.x0) - std::fabs(wt.lambda0);
	wt.v_G0 = std::sqrt(std::fmax(v_A * v_A + w_speed * w_speed - 2.0 * v_A * w_speed * std::cos(wt.y0), 0.0));
	return wt;
}

double airmass_rotation(double beta, double lambda)
{
	return std::asin(sat(beta * std::sin(lambda), -1.0, 1.0));
}

CurvatureRotation curvature_rotation(const OnTrackWindTriangle &wt, double beta, double lambda, double kappa_P,
				     double v_A, double k_adj, double sigma_l, const FeasibilityParams &p,
				     FeasibilityFn feas_fn)
{
	CurvatureRotation out;

	if (kappa_P == 0.0) {
		return out;
	}

	const double feas_on_track = feas_fn(beta, wt.lambda0, p);

	if (feas_on_track <= 0.0) {
		return out;
	}

	const double s = beta * std::sin(wt.lambda0);
	const double den = std::sqrt(std::fmax(1.0 - s * s, kCurvatureDenFloor));
	const double crab_rate_factor = 1.0 + beta * std::cos(wt.lambda0) / den;

	out.asin_arg = feas_on_track * wt.v_G0 * kappa_P / (v_A * k_adj) * crab_rate_factor;
	out.saturated = std::fabs(out.asin_arg) > 1.0;
	out.eta_c0 = std::asin(sat(out.asin_arg, -1.0, 1.0));
	out.eta_c = feas_fn(beta, lambda, p) * sigma_l * out.eta_c0;
	return out;
}

double adaptive_gain(double k, double k_mult, double beta, double kappa_P, double sigma_l)
{
	const double abs_kappa = std::fabs(kappa_P);
	double k_max;

	if (beta >= 1.0) {
		const double one_plus = 1.0 + beta;
		k_max = std::fmax(k, k_mult * one_plus * one_plus * abs_kappa);

	} else {
		k_max = std::fmax(k, 4.0 * k_mult * abs_kappa);
	}

	return k_max + sigma_l * (k - k_max);
}

InfeasibleLookahead infeasible_lookahead(const Vec2 &l_hat, const Vec2 &w, double v_A)
{
	const double w_speed = w.norm();

	if (w_speed <= kEpsVec) {
		return {l_hat, true};
	}

	const double root = std::sqrt(std::fmax(w_speed * w_speed - v_A * v_A, 0.0));
	const Vec2 num = root * l_hat - w;
	const double n = num.norm();

	if (n <= kEpsVec) {
		return {w * (-1.0 / w_speed), true};
	}

	return {num * (1.0 / n), false};
}

LookaheadVector blend_lookahead(const Vec2 &l_feas, const Vec2 &l_infeas, double f)
{
	const Vec2 v = f * l_feas + (1.0 - f) * l_infeas;
	const double n = v.norm();

	if (n <= kEpsVec) {
		return {l_infeas, true};
	}

	return {v * (1.0 / n), false};
}

GuidanceOutput guidance_step(const VehicleState &state, const Vec2 &w, const PathRef &path,
			     const GuidanceConfig &cfg)
{
	return guidance_step(state, w, path, cfg, buffered_feasibility);
}

GuidanceOutput guidance_step(const VehicleState &state, const Vec2 &w, const PathRef &path,
			     const GuidanceConfig &cfg, FeasibilityFn feas_fn)
{
	GuidanceOutput out;
	GuidanceTelemetry &tm = out.telemetry;
	const AirspeedConfig &as = cfg.airspeed;

	const Vec2 air_vel = state.v_G - w;
	const double v_A = air_vel.norm();

	if (!(v_A > cfg.v_A_floor)) {
		out.v_A_ref = as.v_A_nom;
		tm.flags |= kFlagInvalidAirspeed;
		return out;
	}

	// track error and purely geometric bearing
	const PathProjection proj = project(path, state.r);

	if (proj.degenerate) {
		tm.flags |= kFlagDegeneratePath;
	}

	tm.e_norm = proj.track_error.norm();
	tm.e_b = track_error_boundary(state.v_G.norm(), cfg.T_b, cfg.v_G_co);

	const LookaheadAngle la = lookahead_angle(tm.e_norm, tm.e_b);
	tm.theta_l = la.theta_l;
	tm.e_bar = la.e_bar;
	tm.sigma_l = la.sigma_l;

	const LookaheadVector lv = lookahead_vector(proj.track_error.unit(), proj.tangent, la.theta_l);
	tm.l_hat = lv.l_hat;

	if (lv.degenerate) {
		tm.flags |= kFlagDegenerateLookahead;
	}

	// wind ratio and feasibility of the bearing
	const double w_speed = w.norm();
	tm.beta = w_speed / v_A;
	tm.lambda = signed_angle(w, tm.l_hat);

	const WindExcessIncrement wind_inc = wind_excess_increment(w_speed, tm.lambda, v_A, as, cfg.feas, feas_fn);
	tm.beta_eff = as.mode == CompensationMode::MinGroundSpeed ? wind_inc.beta_eff : tm.beta;
	tm.feas = feas_fn(tm.beta_eff, tm.lambda, cfg.feas);

	// feasible heading reference: crab plus curvature rotation
	tm.k_adj = adaptive_gain(cfg.k, cfg.k_mult, tm.beta, proj.curvature, tm.sigma_l);
	tm.x = airmass_rotation(tm.beta, tm.lambda);

	const OnTrackWindTriangle wt = wind_triangle_on_track(w, v_A, proj.tangent);
	const CurvatureRotation cr = curvature_rotation(wt, tm.beta, tm.lambda, proj.curvature, v_A, tm.k_adj,
					 tm.sigma_l, cfg.feas, feas_fn);
	tm.eta_c0 = cr.eta_c0;
	tm.eta_c = cr.eta_c;
	tm.curvature_asin_arg = cr.asin_arg;

	if (cr.saturated) {
		tm.flags |= kFlagCurvatureSaturated;
	}

	const Vec2 l_feas = rot(tm.l_hat, tm.x + tm.eta_c);

	// infeasible heading reference, then blend
	Vec2 l_infeas = l_feas;

	if (w_speed > kEpsVec) {
		const InfeasibleLookahead il = infeasible_lookahead(tm.l_hat, w, v_A);
		l_infeas = il.l_A;

		if (il.degenerate) {
			tm.flags |= kFlagDegenerateInfeasible;
		}
	}

	const LookaheadVector blended = blend_lookahead(l_feas, l_infeas, tm.feas);
	tm.l_A = blended.l_hat;
	tm.infeasible_blend = 1.0 - tm.feas;

	if (blended.degenerate) {
		tm.flags |= kFlagDegenerateBlend;
	}

	// lateral acceleration about the airspeed vector and roll allocation
	tm.eta_A = signed_angle(air_vel, tm.l_A);
	out.a_lat_ref = tm.k_adj * v_A * v_A * std::sin(tm.eta_A);

	const double roll = std::atan(out.a_lat_ref / cfg.g);
	out.roll_ref = sat(roll, -cfg.phi_max, cfg.phi_max);

	if (out.roll_ref != roll) {
		tm.flags |= kFlagRollSaturated;
	}

	// airspeed reference
	tm.dv_w = wind_inc.dv_w;
	tm.dv_e = track_keeping_increment(tm.e_bar, wind_inc.dw, tm.lambda, tm.beta, as, cfg.feas, feas_fn);
	out.v_A_ref = airspeed_reference(tm.dv_w, tm.dv_e, as);

	return out;
}

} // namespace fwguide
