#include "fwguide/windsim.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>

namespace fwguide {

std::string validate(const SimConfig &cfg)
{
	if (!(cfg.dt > 0.0)) { return "dt: must be > 0"; }
	if (!(cfg.guidance_rate > 0.0)) { return "guidance_rate: must be > 0"; }

	const double period = 1.0 / cfg.guidance_rate;
	const double n_sub = std::round(period / cfg.dt);

	if (n_sub < 1.0 || std::fabs(n_sub * cfg.dt - period) > 1e-9 * period) {
		return "dt: must divide the guidance period";
	}

	if (!(cfg.tau_roll > 0.0)) { return "tau_roll: must be > 0"; }
	if (!(cfg.tau_airspeed > 0.0)) { return "tau_airspeed: must be > 0"; }
	if (!(cfg.phi_max > 0.0 && cfg.phi_max < kHalfPi)) { return "phi_max: must be in (0, pi/2)"; }
	if (!(cfg.roll_rate_max > 0.0)) { return "roll_rate_max: must be > 0"; }
	if (!(cfg.accel_limit > 0.0)) { return "accel_limit: must be > 0"; }
	if (!(cfg.g > 0.0)) { return "g: must be > 0"; }
	if (!(cfg.duration > 0.0)) { return "duration: must be > 0"; }
	if (!(cfg.wind_estimator_tau >= 0.0)) { return "wind_estimator_tau: must be >= 0"; }

	return {};
}

std::string validate(const WindField &field)
{
	if (const auto *ramp = std::get_if<PiecewiseRampWind>(&field)) {
		if (ramp->knots.empty()) {
			return "knots: must not be empty";
		}

		for (std::size_t i = 1; i < ramp->knots.size(); ++i) {
			if (!(ramp->knots[i].t > ramp->knots[i - 1].t)) {
				return "knots: times must be strictly increasing";
			}
		}

	} else if (const auto *gust = std::get_if<GustWind>(&field)) {
		if (!(gust->period > 0.0)) { return "period: must be > 0"; }

	} else if (const auto *noise = std::get_if<NoiseWind>(&field)) {
		if (!(noise->sigma >= 0.0)) { return "sigma: must be >= 0"; }
		if (!(noise->correlation_time > 0.0)) { return "correlation_time: must be > 0"; }
	}

	return {};
}

namespace {

std::mt19937_64 make_rng(const WindField &field, std::uint64_t run_seed)
{
	std::uint64_t field_seed = 0;

	if (const auto *noise = std::get_if<NoiseWind>(&field)) {
		field_seed = noise->seed;
	}

	std::seed_seq seq{static_cast<std::uint32_t>(field_seed), static_cast<std::uint32_t>(field_seed >> 32),
			  static_cast<std::uint32_t>(run_seed), static_cast<std::uint32_t>(run_seed >> 32)};
	return std::mt19937_64(seq);
}

Vec2 lerp(const Vec2 &a, const Vec2 &b, double s)
{
	return a + s * (b - a);
}

} // namespace

WindSampler::WindSampler(WindField field, std::uint64_t run_seed) :
	_field(std::move(field)),
	_rng(make_rng(_field, run_seed))
{
}

void WindSampler::extend_noise(std::size_t n)
{
	const auto &noise = std::get<NoiseWind>(_field);
	const double a = std::exp(-kNoiseStep / noise.correlation_time);
	const double drive = noise.sigma * std::sqrt(1.0 - a * a);

	while (_noise.size() < n) {
		if (_noise.empty()) {
			// start in the stationary distribution
			const double x = _normal(_rng);
			const double y = _normal(_rng);
			_noise.push_back({noise.sigma * x, noise.sigma * y});
			continue;
		}

		const Vec2 prev = _noise.back();
		const double x = _normal(_rng);
		const double y = _normal(_rng);
		_noise.push_back({a * prev.x + drive * x, a * prev.y + drive * y});
	}
}

Vec2 WindSampler::at(double t)
{
	if (const auto *c = std::get_if<ConstantWind>(&_field)) {
		return c->w;
	}

	if (const auto *ramp = std::get_if<PiecewiseRampWind>(&_field)) {
		const auto &k = ramp->knots;

		if (t <= k.front().t) {
			return k.front().w;
		}

		if (t >= k.back().t) {
			return k.back().w;
		}

		std::size_t i = 1;

		while (k[i].t < t) {
			++i;
		}

		return lerp(k[i - 1].w, k[i].w, (t - k[i - 1].t) / (k[i].t - k[i - 1].t));
	}

	if (const auto *gust = std::get_if<GustWind>(&_field)) {
		if (t < gust->t0 || t > gust->t0 + gust->period) {
			return gust->base;
		}

		const double shape = 0.5 * (1.0 - std::cos(2.0 * kPi * (t - gust->t0) / gust->period));
		return gust->base + shape * gust->amplitude;
	}

	const auto &noise = std::get<NoiseWind>(_field);
	const double idx = std::fmax(t, 0.0) / kNoiseStep;
	const auto i = static_cast<std::size_t>(idx);
	extend_noise(i + 2);
	return noise.base + lerp(_noise[i], _noise[i + 1], idx - static_cast<double>(i));
}

StateDerivative derivative(const SimState &s, const GuidanceOutput &cmd, const Vec2 &wind, const SimConfig &cfg)
{
	const double roll_ref = sat(cmd.roll_ref, -cfg.phi_max, cfg.phi_max);

	StateDerivative d;
	d.phi_dot = sat((roll_ref - s.phi) / cfg.tau_roll, -cfg.roll_rate_max, cfg.roll_rate_max);
	d.v_A_dot = sat((cmd.v_A_ref - s.v_A) / cfg.tau_airspeed, -cfg.accel_limit, cfg.accel_limit);
	d.xi_dot = cfg.g * std::tan(s.phi) / s.v_A;
	d.r_dot = s.v_A * from_angle(s.xi) + wind;
	return d;
}

namespace {

SimState advance(const SimState &s, const StateDerivative &d, double h)
{
	return {s.r + h * d.r_dot, s.xi + h * d.xi_dot, s.phi + h * d.phi_dot, s.v_A + h * d.v_A_dot};
}

bool finite(const SimState &s)
{
	return std::isfinite(s.r.x) && std::isfinite(s.r.y) && std::isfinite(s.xi) && std::isfinite(s.phi) &&
	       std::isfinite(s.v_A);
}

} // namespace

SimState step(const SimState &state, const GuidanceOutput &cmd, const Vec2 &wind, const SimConfig &cfg, double dt)
{
	const StateDerivative k1 = derivative(state, cmd, wind, cfg);
	const StateDerivative k2 = derivative(advance(state, k1, 0.5 * dt), cmd, wind, cfg);
	const StateDerivative k3 = derivative(advance(state, k2, 0.5 * dt), cmd, wind, cfg);
	const StateDerivative k4 = derivative(advance(state, k3, dt), cmd, wind, cfg);

	const double w6 = dt / 6.0;
	SimState next;
	next.r = state.r + w6 * (k1.r_dot + 2.0 * k2.r_dot + 2.0 * k3.r_dot + k4.r_dot);
	next.xi = wrap_pi(state.xi + w6 * (k1.xi_dot + 2.0 * k2.xi_dot + 2.0 * k3.xi_dot + k4.xi_dot));
	next.phi = state.phi + w6 * (k1.phi_dot + 2.0 * k2.phi_dot + 2.0 * k3.phi_dot + k4.phi_dot);
	next.v_A = state.v_A + w6 * (k1.v_A_dot + 2.0 * k2.v_A_dot + 2.0 * k3.v_A_dot + k4.v_A_dot);

	if (!finite(next) || !(next.v_A > 0.0)) {
		throw SimulationError("non-finite or non-positive airspeed state", -1.0);
	}

	return next;
}

SimLog run(const SimScenario &scenario, FeasibilityFn feas_fn)
{
	const SimConfig &cfg = scenario.sim;
	const GuidanceConfig &gcfg = scenario.guidance;

	for (const std::string &err : {validate(cfg), validate(gcfg), validate(scenario.wind)}) {
		if (!err.empty()) {
			throw std::invalid_argument(err);
		}
	}

	if (!(scenario.initial.v_A > gcfg.v_A_floor)) {
		throw std::invalid_argument("initial airspeed must exceed the guidance airspeed floor");
	}

	const double period = 1.0 / cfg.guidance_rate;
	const auto n_sub = static_cast<long>(std::round(period / cfg.dt));
	const double dt = period / static_cast<double>(n_sub);
	const auto n_updates = static_cast<long>(std::round(cfg.duration * cfg.guidance_rate));
	const double est_gain = cfg.wind_estimator_tau > 0.0 ? 1.0 - std::exp(-period / cfg.wind_estimator_tau) : 1.0;

	WindSampler wind(scenario.wind, cfg.seed);

	SimLog log;
	log.guidance_period = period;
	log.rows.reserve(static_cast<std::size_t>(n_updates) + 1);

	SimState s = scenario.initial;
	Vec2 wind_est = wind.at(0.0);

	for (long k = 0; k <= n_updates; ++k) {
		const double t = static_cast<double>(k) * period;
		const Vec2 w = wind.at(t);

		if (k > 0) {
			wind_est += est_gain * (w - wind_est);
		}

		const Vec2 air_vel = s.v_A * from_angle(s.xi);
		const VehicleState vs{s.r, air_vel + w};
		const GuidanceOutput cmd = guidance_step(vs, wind_est, scenario.path, gcfg, feas_fn);
		const GuidanceTelemetry &tm = cmd.telemetry;

		SimLogRow row{};
		row.t = t;
		row.r = s.r;
		row.v_G = vs.v_G;
		row.v_A = s.v_A;
		row.xi = s.xi;
		row.phi = s.phi;
		row.roll_ref = cmd.roll_ref;
		row.v_A_ref = cmd.v_A_ref;
		row.e_norm = tm.e_norm;
		row.feas = tm.feas;
		row.lambda = tm.lambda;
		row.beta = tm.beta;
		row.v_G_fwd = forward_ground_speed(vs.v_G, air_vel).value;
		row.wind = w;
		row.wind_est = wind_est;
		row.a_lat_ref = cmd.a_lat_ref;
		row.ref_heading = angle_of(tm.l_A);
		row.e_bar = tm.e_bar;
		row.sigma_l = tm.sigma_l;
		row.dv_w = tm.dv_w;
		row.dv_e = tm.dv_e;
		row.curvature_asin_arg = tm.curvature_asin_arg;
		row.flags = tm.flags;
		log.rows.push_back(row);

		if (k == n_updates) {
			break;
		}

		for (long j = 0; j < n_sub; ++j) {
			const double ts = t + static_cast<double>(j) * dt;

			try {
				s = step(s, cmd, wind.at(ts + 0.5 * dt), cfg, dt);

			} catch (const SimulationError &e) {
				throw SimulationError(fmt::format("{} at t = {:.3f} s", e.what(), ts), ts);
			}
		}
	}

	return log;
}

void write_csv(const SimLog &log, std::ostream &os)
{
	os << kSimLogCsvHeader << '\n';
	fmt::memory_buffer buf;

	for (const SimLogRow &r : log.rows) {
		buf.clear();
		fmt::format_to(std::back_inserter(buf), "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
			       r.t, r.r.x, r.r.y, r.v_G.x, r.v_G.y, r.v_A, r.xi, r.phi, r.roll_ref, r.v_A_ref,
			       r.e_norm, r.feas, r.lambda, r.beta, r.v_G_fwd, r.wind.x, r.wind.y);
		os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
	}
}

} // namespace fwguide
