#include "fwguide/path.hpp"

#include <stdexcept>
#include <string>

namespace fwguide {

LinePath make_line(Vec2 origin, Vec2 direction)
{
	if (direction.norm() <= kEpsVec) {
		throw std::invalid_argument("line direction must be non-zero");
	}

	return {origin, direction.unit()};
}

CirclePath make_circle(Vec2 center, double radius, TurnDirection turn)
{
	if (!(radius >= kMinCircleRadius)) {
		throw std::invalid_argument("circle radius must be >= " + std::to_string(kMinCircleRadius) + " m");
	}

	return {center, radius, turn};
}

namespace {

PathProjection project_line(const LinePath &line, const Vec2 &r)
{
	const Vec2 rel = r - line.origin;
	const Vec2 p = line.origin + dot(rel, line.direction) * line.direction;
	return {p, line.direction, 0.0, p - r, false};
}

PathProjection project_circle(const CirclePath &circle, const Vec2 &r)
{
	PathProjection out;
	Vec2 radial = r - circle.center;

	if (radial.norm() <= kEpsVec) {
		// every point on the circle is equidistant; pick bearing 0
		radial = {1.0, 0.0};
		out.degenerate = true;

	} else {
		radial = radial.unit();
	}

	const bool ccw = circle.turn == TurnDirection::CCW;
	out.closest_point = circle.center + circle.radius * radial;
	out.tangent = ccw ? Vec2{-radial.y, radial.x} : Vec2{radial.y, -radial.x};
	out.curvature = (ccw ? 1.0 : -1.0) / circle.radius;
	out.track_error = out.closest_point - r;
	return out;
}

} // namespace

PathProjection project(const PathRef &path, const Vec2 &position)
{
	return std::visit([&](const auto &p) {
		using P = std::decay_t<decltype(p)>;

		if constexpr (std::is_same_v<P, LinePath>) {
			return project_line(p, position);

		} else {
			return project_circle(p, position);
		}
	}, path);
}

} // namespace fwguide
