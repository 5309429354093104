#include "varbound/geometry2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace varbound::geo {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2, 0.0, 1.0);
  return std::hypot(p[0] - (a[0] + t * dx), p[1] - (a[1] + t * dy));
}

}  // namespace

Polygon convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double distance_outside(const Polygon& poly, const Point& p) {
  if (poly.empty()) return std::numeric_limits<double>::infinity();
  if (poly.size() == 1) return std::hypot(p[0] - poly[0][0], p[1] - poly[0][1]);
  if (poly.size() == 2) return segment_distance(p, poly[0], poly[1]);
  bool inside = true;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (cross(poly[i], poly[(i + 1) % poly.size()], p) < 0.0) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  return best;
}

bool contains(const Polygon& poly, const Point& p, double slack) { return distance_outside(poly, p) <= slack; }

Polygon minkowski_box(const Polygon& poly, double w, double h) {
  std::vector<Point> pts;
  pts.reserve(poly.size() * 4);
  for (const Point& v : poly) {
    pts.push_back(v);
    pts.push_back({v[0] + w, v[1]});
    pts.push_back({v[0], v[1] + h});
    pts.push_back({v[0] + w, v[1] + h});
  }
  return convex_hull(std::move(pts));
}

}  // namespace varbound::geo
