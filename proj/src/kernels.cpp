#include "fwguide/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>

namespace fwguide {

namespace {

template <std::floating_point T>
FeasibilityTable<T> make_table(const Grid1D &lambda, const Grid1D &beta)
{
	FeasibilityTable<T> t{lambda, beta, {}};
	t.values.resize(lambda.count * beta.count);
	return t;
}

AirspeedConfig without_min_ground_speed(AirspeedConfig cfg)
{
	cfg.mode = CompensationMode::WindExcess;
	cfg.v_G_min = 0.0;
	return cfg;
}

AirspeedMapCell map_cell(const AirspeedMapSpec &spec, std::size_t i_wind, std::size_t i_lambda)
{
	const double w = spec.wind.at(i_wind);
	const double lambda = spec.lambda.at(i_lambda);
	AirspeedConfig with_min = spec.airspeed;
	with_min.mode = CompensationMode::MinGroundSpeed;

	return {w, lambda,
		steady_airspeed(w, lambda, without_min_ground_speed(spec.airspeed), spec.feas, spec.tol, spec.max_iter),
		steady_airspeed(w, lambda, with_min, spec.feas, spec.tol, spec.max_iter)};
}

AirspeedMap empty_map(const AirspeedMapSpec &spec)
{
	AirspeedMap map{spec, {}};
	map.cells.resize(spec.wind.count * spec.lambda.count);
	return map;
}

} // namespace

template <std::floating_point T>
FeasibilityTable<T> feasibility_table(const Grid1D &lambda, const Grid1D &beta, const BasicFeasibilityParams<T> &p)
{
	FeasibilityTable<T> t = make_table<T>(lambda, beta);
	const auto n_lambda = static_cast<std::int64_t>(lambda.count);

	#pragma omp parallel for schedule(static)
	for (std::int64_t i = 0; i < n_lambda; ++i) {
		const T lam = static_cast<T>(lambda.at(static_cast<std::size_t>(i)));
		T *row = t.values.data() + static_cast<std::size_t>(i) * beta.count;

		for (std::size_t j = 0; j < beta.count; ++j) {
			row[j] = feas(static_cast<T>(beta.at(j)), lam, p);
		}
	}

	return t;
}

template <std::floating_point T>
FeasibilityTable<T> feasibility_table_serial(const Grid1D &lambda, const Grid1D &beta,
		const BasicFeasibilityParams<T> &p)
{
	FeasibilityTable<T> t = make_table<T>(lambda, beta);

	for (std::size_t i = 0; i < lambda.count; ++i) {
		const T lam = static_cast<T>(lambda.at(i));

		for (std::size_t j = 0; j < beta.count; ++j) {
			t.values[i * beta.count + j] = feas(static_cast<T>(beta.at(j)), lam, p);
		}
	}

	return t;
}

template FeasibilityTable<float> feasibility_table(const Grid1D &, const Grid1D &,
		const BasicFeasibilityParams<float> &);
template FeasibilityTable<double> feasibility_table(const Grid1D &, const Grid1D &,
		const BasicFeasibilityParams<double> &);
template FeasibilityTable<float> feasibility_table_serial(const Grid1D &, const Grid1D &,
		const BasicFeasibilityParams<float> &);
template FeasibilityTable<double> feasibility_table_serial(const Grid1D &, const Grid1D &,
		const BasicFeasibilityParams<double> &);

FeasibilityTable<double> feasibility_table(const Grid1D &lambda, const Grid1D &beta, const FeasibilityParams &p,
		FeasibilityFn feas_fn)
{
	FeasibilityTable<double> t = make_table<double>(lambda, beta);
	const auto n_lambda = static_cast<std::int64_t>(lambda.count);

	#pragma omp parallel for schedule(static)
	for (std::int64_t i = 0; i < n_lambda; ++i) {
		const double lam = lambda.at(static_cast<std::size_t>(i));
		double *row = t.values.data() + static_cast<std::size_t>(i) * beta.count;

		for (std::size_t j = 0; j < beta.count; ++j) {
			row[j] = feas_fn(beta.at(j), lam, p);
		}
	}

	return t;
}

double steady_forward_ground_speed(double w, double lambda, double v_A, const AirspeedConfig &cfg,
				   const FeasibilityParams &p)
{
	const Vec2 wind{w, 0.0};
	const Vec2 l_hat = from_angle(lambda);
	const double beta = w / v_A;
	const double beta_eff = cfg.mode == CompensationMode::MinGroundSpeed ? (w + cfg.v_G_min) / v_A : beta;
	const double f = feas(beta_eff, lambda, p);

	const Vec2 l_feas = rot(l_hat, airmass_rotation(beta, lambda));
	const Vec2 l_infeas = w > kEpsVec ? infeasible_lookahead(l_hat, wind, v_A).l_A : l_feas;
	const Vec2 heading = blend_lookahead(l_feas, l_infeas, f).l_hat;

	return v_A + dot(wind, heading);
}

SteadyAirspeed steady_airspeed(double w, double lambda, const AirspeedConfig &cfg, const FeasibilityParams &p,
			       double tol, int max_iter)
{
	const auto reference = [&](double v_A) {
		return airspeed_reference(wind_excess_increment(w, lambda, v_A, cfg, p).dv_w, 0.0, cfg);
	};

	SteadyAirspeed out;
	int evals = 0;

	// residual g(v) = v_A_ref(v) - v is >= 0 at v_A_nom and <= 0 at v_A_max
	const auto accept = [&](double ref) {
		out.v_A_ref = ref;
		out.iterations = evals;
		out.converged = true;
		out.v_G_fwd = steady_forward_ground_speed(w, lambda, ref, cfg, p);
		return out;
	};

	double a = cfg.v_A_nom;
	double fa = reference(a);
	double ga = fa - a;
	++evals;

	if (std::fabs(ga) <= tol) {
		return accept(fa);
	}

	double b = cfg.v_A_nom + cfg.dv_max();
	double fb = reference(b);
	double gb = fb - b;
	++evals;

	if (std::fabs(gb) <= tol) {
		return accept(fb);
	}

	// Illinois regula falsi on the bracket
	int side = 0;
	double c = a;

	while (evals < max_iter) {
		c = (b * ga - a * gb) / (ga - gb);

		if (!(c > a && c < b)) {
			c = 0.5 * (a + b);
		}

		const double fc = reference(c);
		const double gc = fc - c;
		++evals;

		if (std::fabs(gc) <= tol) {
			return accept(fc);
		}

		if ((gc > 0.0) == (ga > 0.0)) {
			a = c;
			ga = gc;

			if (side == -1) {
				gb *= 0.5;
			}

			side = -1;

		} else {
			b = c;
			gb = gc;

			if (side == 1) {
				ga *= 0.5;
			}

			side = 1;
		}
	}

	out.v_A_ref = c;
	out.iterations = evals;
	out.v_G_fwd = steady_forward_ground_speed(w, lambda, c, cfg, p);
	return out;
}

AirspeedMap airspeed_map(const AirspeedMapSpec &spec)
{
	AirspeedMap map = empty_map(spec);
	const auto n = static_cast<std::int64_t>(map.cells.size());
	const std::size_t n_lambda = spec.lambda.count;

	#pragma omp parallel for schedule(dynamic, 64)
	for (std::int64_t c = 0; c < n; ++c) {
		const auto idx = static_cast<std::size_t>(c);
		map.cells[idx] = map_cell(spec, idx / n_lambda, idx % n_lambda);
	}

	return map;
}

AirspeedMap airspeed_map_serial(const AirspeedMapSpec &spec)
{
	AirspeedMap map = empty_map(spec);

	for (std::size_t i = 0; i < spec.wind.count; ++i) {
		for (std::size_t j = 0; j < spec.lambda.count; ++j) {
			map.cells[i * spec.lambda.count + j] = map_cell(spec, i, j);
		}
	}

	return map;
}

void guidance_batch(std::span<const GuidanceCase> cases, const GuidanceConfig &cfg, std::span<GuidanceOutput> out,
		    FeasibilityFn feas_fn)
{
	assert(out.size() >= cases.size());
	const auto n = static_cast<std::int64_t>(cases.size());

	#pragma omp parallel for schedule(static)
	for (std::int64_t i = 0; i < n; ++i) {
		const GuidanceCase &c = cases[static_cast<std::size_t>(i)];
		out[static_cast<std::size_t>(i)] = guidance_step(c.state, c.wind, c.path, cfg, feas_fn);
	}
}

void guidance_batch_serial(std::span<const GuidanceCase> cases, const GuidanceConfig &cfg,
			   std::span<GuidanceOutput> out, FeasibilityFn feas_fn)
{
	assert(out.size() >= cases.size());

	for (std::size_t i = 0; i < cases.size(); ++i) {
		out[i] = guidance_step(cases[i].state, cases[i].wind, cases[i].path, cfg, feas_fn);
	}
}

} // namespace fwguide
