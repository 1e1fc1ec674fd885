#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace fwguide {

/// Below this norm a vector is treated as having no direction.
inline constexpr double kEpsVec = 1e-6;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Planar vector. Holds positions (m), velocities (m/s) or unit directions
/// depending on context.
struct Vec2 {
	double x{0.0};
	double y{0.0};

	constexpr Vec2 &operator+=(const Vec2 &o) { x += o.x; y += o.y; return *this; }
	constexpr Vec2 &operator-=(const Vec2 &o) { x -= o.x; y -= o.y; return *this; }
	constexpr Vec2 &operator*=(double s) { x *= s; y *= s; return *this; }

	double norm() const { return std::hypot(x, y); }
	constexpr double norm_sq() const { return x * x + y * y; }

	/// Unit vector; the zero vector when norm <= kEpsVec.
	Vec2 unit() const
	{
		const double n = norm();
		return n > kEpsVec ? Vec2{x / n, y / n} : Vec2{};
	}

	friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

constexpr Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
constexpr Vec2 operator-(const Vec2 &a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }

constexpr double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product a x b.
constexpr double cross(const Vec2 &a, const Vec2 &b) { return a.x * b.y - a.y * b.x; }

inline Vec2 from_angle(double a) { return {std::cos(a), std::sin(a)}; }

/// Direction of v in (-pi, pi]; 0 for a directionless vector.
inline double angle_of(const Vec2 &v)
{
	if (v.norm() <= kEpsVec) {
		return 0.0;
	}

	const double a = std::atan2(v.y, v.x);
	return a == -kPi ? kPi : a;
}

/// Wraps to (-pi, pi].
inline double wrap_pi(double a)
{
	if (a > -kPi && a <= kPi) {
		return a;
	}

	double r = std::remainder(a, 2.0 * kPi);

	if (r <= -kPi) {
		r += 2.0 * kPi;
	}

	return r;
}

/// Signed angle rotating a onto b, in (-pi, pi]. Returns 0 if either
/// vector has no direction.
inline double signed_angle(const Vec2 &a, const Vec2 &b)
{
	if (a.norm() <= kEpsVec || b.norm() <= kEpsVec) {
		return 0.0;
	}

	const double ang = std::atan2(cross(a, b), dot(a, b));
	return ang == -kPi ? kPi : ang;
}

/// Counter-clockwise rotation of v by a.
inline Vec2 rot(const Vec2 &v, double a)
{
	const double c = std::cos(a);
	const double s = std::sin(a);
	return {c * v.x - s * v.y, s * v.x + c * v.y};
}

template <class T>
constexpr T sat(T v, T lo, T hi)
{
	assert(lo <= hi);
	return std::clamp(v, lo, hi);
}

} // namespace fwguide
