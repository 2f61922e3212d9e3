#pragma once

#include <vector>

#include "geom.hpp"

namespace tlab {

/// Vertex lists of convex sets in floating point. Empty means the empty set.
using ConvexPoly = std::vector<Vec2>;

/// Image of poly under p -> center + factor * (p - center).
inline ConvexPoly homothety(const ConvexPoly& poly, const Vec2& center, double factor) {
  ConvexPoly out;
  out.reserve(poly.size());
  for (const Vec2& v : poly) out.push_back(center + factor * (v - center));
  return convex_hull(out);
}

/// s * P + r * Q in the Minkowski sense.
inline ConvexPoly minkowski_combination(const ConvexPoly& p, double s, const ConvexPoly& q, double r) {
  if (p.empty() || q.empty()) return {};
  ConvexPoly sums;
  sums.reserve(p.size() * q.size());
  for (const Vec2& a : p)
    for (const Vec2& b : q) sums.push_back(s * a + r * b);
  return convex_hull(sums);
}

/// Keeps the part of poly with cross(b - a, p - a) >= -eps.
inline ConvexPoly clip_halfplane(const ConvexPoly& poly, const Vec2& a, const Vec2& b, double eps = 1e-12) {
  if (poly.empty()) return {};
  const Vec2 e = b - a;
  const double scale = norm(e);
  auto side = [&](const Vec2& p) { return cross(e, p - a) / scale; };
  if (poly.size() == 1) return side(poly[0]) >= -eps ? poly : ConvexPoly{};
  ConvexPoly out;
  const std::size_t n = poly.size();
  const std::size_t edges = n == 2 ? 1 : n;
  for (std::size_t i = 0; i < edges; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double sp = side(p), sq = side(q);
    if (sp >= -eps) out.push_back(p);
    if ((sp >= -eps) != (sq >= -eps)) {
      const double s = sp / (sp - sq);
      out.push_back(p + s * (q - p));
    }
  }
  if (n == 2 && side(poly[1]) >= -eps) out.push_back(poly[1]);
  return convex_hull(out);
}

/// poly intersected with a full-dimensional convex polygon given
/// counterclockwise.
inline ConvexPoly clip_convex(const ConvexPoly& poly, const ConvexPoly& window, double eps = 1e-12) {
  ConvexPoly out = poly;
  for (std::size_t i = 0; i < window.size() && !out.empty(); ++i)
    out = clip_halfplane(out, window[i], window[(i + 1) % window.size()], eps);
  return out;
}

inline Vec2 vertex_centroid(const ConvexPoly& poly) {
  Vec2 s{};
  for (const Vec2& v : poly) s = s + v;
  return s / static_cast<double>(poly.size());
}

inline double distance_to(const Vec2& p, const ConvexPoly& poly) {
  return dist_point_polygon(p, Section(0.0, poly)).distance;
}

}  // namespace tlab
