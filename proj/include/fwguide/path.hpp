#pragma once

#include "fwguide/geom.hpp"

#include <variant>

namespace fwguide {

/// Smallest admissible loiter radius [m].
inline constexpr double kMinCircleRadius = 1.0;

enum class TurnDirection { CW, CCW };

/// Infinite straight line through origin along a unit direction.
struct LinePath {
	Vec2 origin;
	Vec2 direction{1.0, 0.0};

	friend bool operator==(const LinePath &, const LinePath &) = default;
};

struct CirclePath {
	Vec2 center;
	double radius{50.0};
	TurnDirection turn{TurnDirection::CCW};

	friend bool operator==(const CirclePath &, const CirclePath &) = default;
};

using PathRef = std::variant<LinePath, CirclePath>;

/// Throws std::invalid_argument on a zero direction.
LinePath make_line(Vec2 origin, Vec2 direction);

/// Throws std::invalid_argument if radius < kMinCircleRadius.
CirclePath make_circle(Vec2 center, double radius, TurnDirection turn);

struct PathProjection {
	Vec2 closest_point;
	Vec2 tangent;          ///< unit, along the direction of travel
	double curvature{0.0}; ///< signed [1/m], > 0 turning CCW
	Vec2 track_error;      ///< closest_point - position
	bool degenerate{false};
};

PathProjection project(const PathRef &path, const Vec2 &position);

} // namespace fwguide
