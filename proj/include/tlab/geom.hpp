#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "rational.hpp"

namespace tlab {

template <class T>
struct Vec2T {
  T x{}, y{};

  friend Vec2T operator+(const Vec2T& p, const Vec2T& q) { return {p.x + q.x, p.y + q.y}; }
  friend Vec2T operator-(const Vec2T& p, const Vec2T& q) { return {p.x - q.x, p.y - q.y}; }
  friend Vec2T operator-(const Vec2T& p) { return {-p.x, -p.y}; }
  friend Vec2T operator*(const T& s, const Vec2T& p) { return {s * p.x, s * p.y}; }
  friend Vec2T operator*(const Vec2T& p, const T& s) { return {s * p.x, s * p.y}; }
  friend Vec2T operator/(const Vec2T& p, const T& s) { return {p.x / s, p.y / s}; }
  friend bool operator==(const Vec2T& p, const Vec2T& q) { return p.x == q.x && p.y == q.y; }
};

using Vec2 = Vec2T<double>;
using QVec2 = Vec2T<Rational>;

template <class T>
T dot(const Vec2T<T>& p, const Vec2T<T>& q) { return p.x * q.x + p.y * q.y; }

template <class T>
T cross(const Vec2T<T>& p, const Vec2T<T>& q) { return p.x * q.y - p.y * q.x; }

inline double norm(const Vec2& p) { return std::hypot(p.x, p.y); }

inline QVec2 to_rational(const Vec2& p) { return {to_rational(p.x), to_rational(p.y)}; }
inline Vec2 to_double(const QVec2& p) { return {to_double(p.x), to_double(p.y)}; }

/// Exact sign of cross(b - a, c - a). A float filter handles the common
/// case; near-degenerate inputs fall back to rational arithmetic.
inline int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double l = (b.x - a.x) * (c.y - a.y);
  const double r = (b.y - a.y) * (c.x - a.x);
  const double det = l - r;
  const double bound = 1e-14 * (std::fabs(l) + std::fabs(r));
  if (det > bound) return 1;
  if (det < -bound) return -1;
  QVec2 qa = to_rational(a), qb = to_rational(b), qc = to_rational(c);
  return sign(cross(qb - qa, qc - qa));
}

/// A non-horizontal line x = a z + b, y = c z + d.
template <class T>
struct LineParamT {
  T a{}, b{}, c{}, d{};
  friend bool operator==(const LineParamT&, const LineParamT&) = default;
};

using LineParam = LineParamT<double>;
using QLineParam = LineParamT<Rational>;

template <class T>
Vec2T<T> line_point_at(const LineParamT<T>& l, const T& t) {
  return {l.a * t + l.b, l.c * t + l.d};
}

inline Vec2 line_point_at(const LineParam& l, double t) { return {l.a * t + l.b, l.c * t + l.d}; }

/// lambda * l1 + (1 - lambda) * l2, coordinatewise.
template <class T>
LineParamT<T> affine_combination(const LineParamT<T>& l1, const LineParamT<T>& l2, const T& lambda) {
  const T mu = T(1) - lambda;
  return {lambda * l1.a + mu * l2.a, lambda * l1.b + mu * l2.b, lambda * l1.c + mu * l2.c,
          lambda * l1.d + mu * l2.d};
}

/// The line through p at height s and q at height t.
template <class T>
LineParamT<T> line_through(const Vec2T<T>& p, const T& s, const Vec2T<T>& q, const T& t) {
  const T dt = t - s;
  const T a = (q.x - p.x) / dt;
  const T c = (q.y - p.y) / dt;
  return {a, p.x - a * s, c, p.y - c * s};
}

inline QLineParam to_rational(const LineParam& l) {
  return {to_rational(l.a), to_rational(l.b), to_rational(l.c), to_rational(l.d)};
}
inline LineParam to_double(const QLineParam& l) {
  return {to_double(l.a), to_double(l.b), to_double(l.c), to_double(l.d)};
}

/// Convex hull, counterclockwise, collinear and repeated points removed.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Vec2& p, const Vec2& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && orientation(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && orientation(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// A convex polygon (possibly a segment or a point) in the plane z = t.
class Section {
 public:
  enum class Kind { point, segment, polygon };

  Section() = default;

  /// Vertices may be given in either orientation and may include repeated or
  /// collinear points; they must all lie on the boundary of their hull.
  Section(double t, std::vector<Vec2> vertices) : t_(t) {
    if (!std::isfinite(t)) throw InvalidPolygon("height is not finite");
    if (vertices.empty()) throw InvalidPolygon("no vertices");
    for (const Vec2& v : vertices)
      if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw InvalidPolygon("vertex is not finite");
    vertices_ = convex_hull(vertices);
    if (vertices_.size() >= 3) {
      for (const Vec2& v : vertices)
        if (strictly_inside(v)) throw InvalidPolygon("vertices are not in convex position");
    }
  }

  double t() const { return t_; }
  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  Kind kind() const {
    if (vertices_.size() == 1) return Kind::point;
    if (vertices_.size() == 2) return Kind::segment;
    return Kind::polygon;
  }

  Vec2 centroid() const {
    Vec2 s{};
    for (const Vec2& v : vertices_) s = s + v;
    return s / static_cast<double>(vertices_.size());
  }

  /// Closed containment with exact orientation tests.
  bool contains(const Vec2& p) const {
    switch (kind()) {
      case Kind::point:
        return p == vertices_[0];
      case Kind::segment: {
        const Vec2 &a = vertices_[0], &b = vertices_[1];
        if (orientation(a, b, p) != 0) return false;
        QVec2 qa = to_rational(a), qb = to_rational(b), qp = to_rational(p);
        Rational s = dot(qp - qa, qb - qa);
        return s >= 0 && s <= dot(qb - qa, qb - qa);
      }
      case Kind::polygon:
        for (std::size_t i = 0; i < vertices_.size(); ++i)
          if (orientation(vertices_[i], vertices_[(i + 1) % vertices_.size()], p) < 0) return false;
        return true;
    }
    return false;
  }

  /// Exact containment of a rational point.
  bool contains(const QVec2& p) const {
    std::vector<QVec2> q;
    for (const Vec2& v : vertices_) q.push_back(to_rational(v));
    switch (kind()) {
      case Kind::point:
        return p == q[0];
      case Kind::segment: {
        if (sign(cross(q[1] - q[0], p - q[0])) != 0) return false;
        Rational s = dot(p - q[0], q[1] - q[0]);
        return s >= 0 && s <= dot(q[1] - q[0], q[1] - q[0]);
      }
      case Kind::polygon:
        for (std::size_t i = 0; i < q.size(); ++i)
          if (sign(cross(q[(i + 1) % q.size()] - q[i], p - q[i])) < 0) return false;
        return true;
    }
    return false;
  }

 private:
  bool strictly_inside(const Vec2& p) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (orientation(vertices_[i], vertices_[(i + 1) % vertices_.size()], p) <= 0) return false;
    return true;
  }

  double t_ = 0;
  std::vector<Vec2> vertices_;
};

struct DistanceResult {
  double distance = 0;
  Vec2 closest;
};

inline Vec2 closest_on_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 e = b - a;
  const double len2 = dot(e, e);
  if (len2 == 0) return a;
  const double s = std::clamp(dot(p - a, e) / len2, 0.0, 1.0);
  return a + s * e;
}

inline DistanceResult dist_point_polygon(const Vec2& p, const Section& poly) {
  const auto& v = poly.vertices();
  if (poly.kind() == Section::Kind::polygon && poly.contains(p)) return {0.0, p};
  if (poly.kind() == Section::Kind::point) return {norm(p - v[0]), v[0]};
  DistanceResult best{std::numeric_limits<double>::infinity(), v[0]};
  const std::size_t edges = poly.kind() == Section::Kind::segment ? 1 : v.size();
  for (std::size_t i = 0; i < edges; ++i) {
    Vec2 c = closest_on_segment(p, v[i], v[(i + 1) % v.size()]);
    double d = norm(p - c);
    if (d < best.distance) best = {d, c};
  }
  if (best.distance == 0) best.closest = p;
  return best;
}

/// Projects p at height t from the center (0, 0, m) onto height target;
/// an empty center means projection along the z-axis.
inline Vec2 central_project(std::optional<double> m, const Vec2& p, double t, double target) {
  if (!m) return p;
  if (*m == t || *m == target) throw CenterOnPlane("center height coincides with a plane");
  return p * ((*m - target) / (*m - t));
}

/// Closed half-plane {p : normal . (p - anchor) >= 0} in the plane z = t.
struct HalfPlane {
  Vec2 anchor;
  Vec2 normal;
  double t = 0;

  bool contains(const Vec2& p) const { return dot(normal, p - anchor) >= 0; }
};

/// Angle between the boundary lines of two half-planes, in [0, pi/2].
inline double boundary_angle(const Vec2& n1, const Vec2& n2) {
  return std::atan2(std::fabs(cross(n1, n2)), std::fabs(dot(n1, n2)));
}

/// Five half-planes sorted by height.
class HalfPlaneConfig {
 public:
  static constexpr double default_genericity_tol = 1e-9;

  HalfPlaneConfig() = default;

  explicit HalfPlaneConfig(std::vector<HalfPlane> planes) {
    if (planes.size() != 5) throw ValidationError("a configuration has exactly five half-planes");
    for (HalfPlane& h : planes) {
      if (!std::isfinite(h.t) || !std::isfinite(h.anchor.x) || !std::isfinite(h.anchor.y))
        throw ValidationError("half-plane data is not finite");
      const double len = norm(h.normal);
      if (!(len > 0) || !std::isfinite(len)) throw ValidationError("half-plane normal is zero");
      h.normal = h.normal / len;
    }
    std::array<int, 5> idx{0, 1, 2, 3, 4};
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) { return planes[i].t < planes[j].t; });
    for (int k = 0; k < 5; ++k) {
      planes_[k] = planes[idx[k]];
      order_[k] = idx[k];
    }
    for (int k = 0; k + 1 < 5; ++k)
      if (planes_[k].t == planes_[k + 1].t) throw AnchorCollision("two half-planes share a height");
    generic_ = check_generic(default_genericity_tol);
  }

  const std::array<HalfPlane, 5>& planes() const { return planes_; }
  const HalfPlane& operator[](std::size_t i) const { return planes_[i]; }
  /// order()[k] is the input position of the k-th plane after sorting.
  const std::array<int, 5>& order() const { return order_; }
  bool generic() const { return generic_; }

  bool check_generic(double tol) const {
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (!(boundary_angle(planes_[i].normal, planes_[j].normal) > tol)) return false;
    return true;
  }

 private:
  std::array<HalfPlane, 5> planes_{};
  std::array<int, 5> order_{0, 1, 2, 3, 4};
  bool generic_ = false;
};

/// True iff the five boundary directions pairwise differ by more than tol
/// radians modulo pi.
inline bool genericity_check(const HalfPlaneConfig& config,
                             double tol = HalfPlaneConfig::default_genericity_tol) {
  return config.check_generic(tol);
}

}  // namespace tlab
