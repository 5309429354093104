#pragma once

#include <array>
#include <vector>

namespace varbound::geo {

using Point = std::array<double, 2>;
/// Counter-clockwise convex polygon (vertices only, first vertex not repeated).
using Polygon = std::vector<Point>;

/// Monotone-chain hull; collinear points are dropped. Degenerate inputs give a
/// single point or a two-point segment.
Polygon convex_hull(std::vector<Point> pts);

/// Signed distance style containment: true when p lies in the polygon grown by
/// `slack` (handles point and segment polygons).
bool contains(const Polygon& poly, const Point& p, double slack);

/// Distance from p to the polygon boundary if outside, 0 if inside.
double distance_outside(const Polygon& poly, const Point& p);

/// Minkowski sum with the axis-aligned box [0, w] x [0, h].
Polygon minkowski_box(const Polygon& poly, double w, double h);

}  // namespace varbound::geo
