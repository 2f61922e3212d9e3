#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "codes.hpp"
#include "geom.hpp"

namespace tlab {

/// Which of the coding choices to use. m_interval 0..3 puts the projection
/// center between the k-th and (k+1)-th heights, 4 puts it at infinity.
/// n_index picks the arc of the circle (arc 0 contains angle 0) whose
/// midpoint is N; circle is the direction of travel from N.
struct CodingChoice {
  int m_interval = 4;
  int orient = 1;
  int n_index = 0;
  int circle = 1;
};

struct CodingDetail {
  Code code;
  /// plane_of_label[k] is the sorted plane index numbered k + 1.
  std::array<int, 5> plane_of_label{};
  /// Projection center height; empty at infinity.
  std::optional<double> m;
  double n_angle = 0;
  /// Normals of the projected half-planes in plane 1, by label.
  std::array<Vec2, 5> projected_normals{};
};

/// Exact line through the lowest and highest anchors.
inline QLineParam anchor_line(const HalfPlaneConfig& config) {
  const HalfPlane& lo = config[0];
  const HalfPlane& hi = config[4];
  return line_through(to_rational(lo.anchor), to_rational(lo.t), to_rational(hi.anchor), to_rational(hi.t));
}

/// Throws Degenerate unless the anchors lie on one non-horizontal line.
inline void check_anchors_collinear(const HalfPlaneConfig& config, double tol = 1e-9) {
  LineParam l = to_double(anchor_line(config));
  double scale = 1;
  for (const HalfPlane& h : config.planes()) scale = std::max({scale, std::fabs(h.anchor.x), std::fabs(h.anchor.y)});
  for (const HalfPlane& h : config.planes())
    if (norm(h.anchor - line_point_at(l, h.t)) > tol * scale) throw Degenerate("anchors are not collinear");
}

inline std::vector<CodingChoice> all_coding_choices() {
  std::vector<CodingChoice> out;
  for (int m = 0; m < 5; ++m)
    for (int o : {1, -1})
      for (int n = 0; n < 10; ++n)
        for (int c : {1, -1}) out.push_back({m, o, n, c});
  return out;
}

namespace detail {

inline double wrap_angle(double a) {
  constexpr double two_pi = 2 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  return a < 0 ? a + two_pi : a;
}

}  // namespace detail

/// Reads off the code of a generic configuration. Coordinates are first
/// sheared so that the anchors sit on the z-axis; the half-planes are then
/// numbered from the projection center along the chosen orientation,
/// projected to plane 1 and swept around the unit circle starting at N.
inline CodingDetail coding_detail(const HalfPlaneConfig& config, const CodingChoice& choice = {}) {
  if (choice.m_interval < 0 || choice.m_interval > 4 || (choice.orient != 1 && choice.orient != -1) ||
      choice.n_index < 0 || choice.n_index > 9 || (choice.circle != 1 && choice.circle != -1))
    throw ValidationError("coding choice out of range");
  if (!config.generic()) throw Degenerate("half-plane boundaries are not pairwise non-parallel");
  check_anchors_collinear(config);

  CodingDetail out;
  std::array<double, 5> ts{};
  for (int i = 0; i < 5; ++i) ts[i] = config[i].t;
  std::vector<int> order;
  if (choice.m_interval == 4) {
    for (int i = 0; i < 5; ++i) order.push_back(choice.orient > 0 ? i : 4 - i);
  } else {
    const double m = 0.5 * (ts[choice.m_interval] + ts[choice.m_interval + 1]);
    out.m = m;
    std::vector<int> above, below;
    for (int i = 0; i < 5; ++i) (ts[i] > m ? above : below).push_back(i);
    if (choice.orient > 0) {
      order = above;
      order.insert(order.end(), below.begin(), below.end());
    } else {
      order.assign(below.rbegin(), below.rend());
      order.insert(order.end(), above.rbegin(), above.rend());
    }
  }
  const double t1 = ts[order[0]];
  for (int k = 0; k < 5; ++k) {
    out.plane_of_label[k] = order[k];
    Vec2 n = config[order[k]].normal;
    if (out.m && (*out.m - t1) / (*out.m - ts[order[k]]) < 0) n = -n;
    out.projected_normals[k] = n;
  }

  // Boundary points on the unit circle: two antipodal points per label.
  struct Pt {
    double angle;
    int label;
  };
  std::vector<Pt> pts;
  for (int k = 0; k < 5; ++k) {
    const Vec2& n = out.projected_normals[k];
    const double d = std::atan2(n.y, n.x) + std::numbers::pi / 2;
    pts.push_back({detail::wrap_angle(d), k});
    pts.push_back({detail::wrap_angle(d + std::numbers::pi), k});
  }
  std::sort(pts.begin(), pts.end(), [](const Pt& p, const Pt& q) { return p.angle < q.angle; });
  const int j = choice.n_index;
  const double lo = j > 0 ? pts[j - 1].angle : pts[9].angle - 2 * std::numbers::pi;
  out.n_angle = 0.5 * (lo + pts[j].angle);
  const Vec2 nv{std::cos(out.n_angle), std::sin(out.n_angle)};

  std::vector<std::pair<double, int>> rel;
  for (const Pt& p : pts) rel.push_back({detail::wrap_angle((p.angle - out.n_angle) * choice.circle), p.label});
  std::sort(rel.begin(), rel.end());
  for (int i = 0; i < 5; ++i) {
    const int k = rel[i].second;
    out.code.entries[i] = {k + 1, dot(out.projected_normals[k], nv) > 0};
  }
  return out;
}

inline Code code_from_configuration(const HalfPlaneConfig& config, const CodingChoice& choice = {}) {
  return coding_detail(config, choice).code;
}

/// A configuration with anchors on the z-axis realizing `code`: the k-th
/// boundary crosses the circle at angle (k - 1/2) pi / 5 + rotation, and +
/// means the half-plane contains the direction at angle `rotation`. With
/// rotation 0 this is the code under the default coding choice.
inline HalfPlaneConfig realize_code(const Code& code, const std::array<double, 5>& heights = {1, 2, 3, 4, 5},
                                    double rotation = 0) {
  std::vector<HalfPlane> hp(5);
  std::array<double, 5> sorted = heights;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 0; k < 5; ++k) {
    const Code::Entry& e = code.entries[k];
    const double th = (k + 0.5) * std::numbers::pi / 5 + rotation;
    Vec2 n{std::sin(th), -std::cos(th)};
    if (!e.plus) n = -n;
    hp[e.label - 1] = {{0, 0}, n, sorted[e.label - 1]};
  }
  return HalfPlaneConfig(hp);
}

}  // namespace tlab
