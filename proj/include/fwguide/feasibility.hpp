#pragma once

// Bearing feasibility in excess wind.
//
// The wind ratio beta = w / v_A and the angle lambda from the wind vector to
// the bearing determine whether a ground-relative bearing can be flown. The
// continuous function feas() maps (beta, lambda) to [0, 1] with a cos^2
// transition between a lower limit beta_minus and an upper limit beta_plus.
// beta_plus follows the binary feasibility boundary 1 / sin(lambda_bar) and is
// replaced by a linear cut-off below lambda_co to remove the singularity at
// lambda_bar = 0.
//
// Everything here is templated on the floating point type so the same code
// can be evaluated in single precision for conformance checks.

#include <cmath>
#include <concepts>
#include <numbers>

namespace fwguide {

template <std::floating_point T>
struct BasicFeasibilityParams {
	T beta_buf{T(0.1)};                              ///< buffer below beta = 1, in (0, 1)
	T lambda_co{T(std::numbers::pi / 180.0)};        ///< cut-off angle [rad], in (0, pi/2)

	bool valid() const
	{
		return beta_buf > T(0) && beta_buf < T(1) && lambda_co > T(0) &&
		       lambda_co < T(std::numbers::pi / 2.0);
	}

	friend bool operator==(const BasicFeasibilityParams &, const BasicFeasibilityParams &) = default;
};

using FeasibilityParams = BasicFeasibilityParams<double>;

template <std::floating_point T>
struct BetaLimits {
	T minus;
	T plus;
};

template <std::floating_point T>
T lambda_bar(T lambda)
{
	return std::fmin(std::fabs(lambda), T(std::numbers::pi / 2.0));
}

/// Binary definition: true when the bearing cannot be flown.
template <std::floating_point T>
bool bearing_infeasible(T beta, T lambda)
{
	const T abs_lambda = std::fabs(lambda);
	return beta * std::sin(abs_lambda) >= T(1) ||
	       (abs_lambda >= T(std::numbers::pi / 2.0) && beta > T(1));
}

/// Original continuous feasibility function. Not smooth at the boundary and
/// binary at |lambda| >= pi/2, beta = 1. Kept for comparison only.
template <std::floating_point T>
T feas_legacy(T beta, T lambda)
{
	if (bearing_infeasible(beta, lambda)) {
		return T(0);
	}

	const T lb = lambda_bar(lambda);
	const T c = std::cos(lb);

	if (c <= T(1e-7)) {
		return beta <= T(1) ? T(1) : T(0);
	}

	const T s = beta * std::sin(lb);
	const T num = std::sqrt(std::fmax(T(1) - s * s, T(0)));
	return std::fmin(std::fmax(num / c, T(0)), T(1));
}

template <std::floating_point T>
BetaLimits<T> beta_limits(T lambda_bar, const BasicFeasibilityParams<T> &p)
{
	const T sin_co = std::sin(p.lambda_co);
	const T beta_plus_co = T(1) / sin_co;
	const T m_co = std::cos(p.lambda_co) / (sin_co * sin_co);

	if (lambda_bar < p.lambda_co) {
		const T dl = p.lambda_co - lambda_bar;
		const T beta_minus_co = (beta_plus_co - T(2)) * p.beta_buf + T(1);
		return {beta_minus_co + m_co * dl * p.beta_buf, beta_plus_co + m_co * dl};
	}

	const T inv_sin = T(1) / std::sin(lambda_bar);
	return {(inv_sin - T(2)) * p.beta_buf + T(1), inv_sin};
}

/// Buffered, smooth bearing feasibility in [0, 1]. Exactly zero wherever the
/// binary definition is infeasible and lambda_bar >= lambda_co.
template <std::floating_point T>
T feas(T beta, T lambda, const BasicFeasibilityParams<T> &p)
{
	const T lb = lambda_bar(lambda);
	const BetaLimits<T> lim = beta_limits(lb, p);

	// test the upper limit as beta * sin >= 1 so it agrees bit-for-bit with
	// bearing_infeasible() outside the cut-off
	const bool above = lb >= p.lambda_co ? beta * std::sin(lb) >= T(1) : beta >= lim.plus;

	if (above) {
		return T(0);
	}

	if (beta > lim.minus) {
		const T u = (beta - lim.minus) / (lim.plus - lim.minus);

		if (u >= T(1)) {
			return T(0);
		}

		const T c = std::cos(T(std::numbers::pi / 2.0) * std::fmax(u, T(0)));
		return c * c;
	}

	return T(1);
}

/// Signature shared by feas() and an adapted feas_legacy() so the guidance
/// pipeline can be evaluated with either.
using FeasibilityFn = double (*)(double beta, double lambda, const FeasibilityParams &p);

inline double buffered_feasibility(double beta, double lambda, const FeasibilityParams &p)
{
	return feas(beta, lambda, p);
}

inline double legacy_feasibility(double beta, double lambda, const FeasibilityParams &)
{
	return feas_legacy(beta, lambda);
}

} // namespace fwguide
