#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coding.hpp"
#include "codes.hpp"
#include "error.hpp"
#include "geom.hpp"
#include "lp.hpp"
#include "transversal.hpp"

namespace tlab {

struct DeformationResult {
  bool found = false;
  std::optional<LineParam> line;
  std::optional<QLineParam> exact_line;
  /// n_i . (line at t_i - anchor_i), by sorted plane index.
  std::array<double, 5> slack{};
  double total_slack = 0;
  /// Set by verify_case: the stencil in the chart where the class variant is
  /// read, and the dilation factor relating the two stencils of case C2.
  std::optional<std::array<Vec2, 5>> stencil;
  std::optional<double> dilation;
  /// How verify_case obtained the line: "stencil", "two_stencils" or
  /// "trivial" (S_1 inside pi(H_4) or pi(H_5), so the direct search applies).
  std::string route;
};

namespace detail {

// Row for  n . (P(t) - base) <= 0  over (a, b, c, d, extras...), scaled by
// `sense` (+1 for <=, -1 for >=) and with `sigma_col` receiving +1.
inline lp::Row halfplane_row(std::size_t nvars, const QVec2& n, const Rational& t, const QVec2& base, int sense,
                             std::optional<std::size_t> sigma_col = std::nullopt, bool equality = false) {
  lp::Row r;
  r.a.assign(nvars, Rational(0));
  const Rational s(sense);
  r.a[0] = s * n.x * t;
  r.a[1] = s * n.x;
  r.a[2] = s * n.y * t;
  r.a[3] = s * n.y;
  r.b = s * dot(n, base);
  if (sigma_col) r.a[*sigma_col] = 1;
  r.equality = equality;
  return r;
}

inline void add_box(lp::Problem& p, std::size_t vars, const Rational& radius, const QLineParam& center) {
  const std::array<Rational, 4> c{center.a, center.b, center.c, center.d};
  for (std::size_t k = 0; k < vars; ++k) {
    std::vector<Rational> a(p.n);
    a[k] = 1;
    p.add(a, c[k] + radius);
    a[k] = -1;
    p.add(a, radius - c[k]);
  }
}

inline std::array<Rational, 5> exact_slacks(const HalfPlaneConfig& config, const QLineParam& anchors,
                                            const QLineParam& line) {
  std::array<Rational, 5> s;
  for (int i = 0; i < 5; ++i) {
    const Rational t = to_rational(config[i].t);
    s[i] = dot(to_rational(config[i].normal), line_point_at(line, t) - line_point_at(anchors, t));
  }
  return s;
}

inline DeformationResult make_result(const HalfPlaneConfig& config, const QLineParam& anchors,
                                     const QLineParam& line) {
  DeformationResult r;
  auto s = exact_slacks(config, anchors, line);
  Rational total = 0;
  bool nonneg = true;
  for (int i = 0; i < 5; ++i) {
    r.slack[i] = to_double(s[i]);
    total += s[i];
    nonneg = nonneg && s[i] >= 0;
  }
  r.total_slack = to_double(total);
  r.found = nonneg && total > 0 && r.total_slack > 1e-9;
  r.exact_line = line;
  r.line = to_double(line);
  return r;
}

}  // namespace detail

/// Searches for a line meeting every closed half-plane and the interior of at
/// least one. Anchors are taken on the exact line through the lowest and
/// highest anchors, which makes the problem homogeneous around that line;
/// the search is confined to the unit box around it.
inline DeformationResult find_good_deformation(const HalfPlaneConfig& config) {
  if (!config.generic()) throw Degenerate("half-plane boundaries are not pairwise non-parallel");
  check_anchors_collinear(config);
  const QLineParam anchors = anchor_line(config);
  lp::Problem p(9);
  for (std::size_t i = 0; i < 5; ++i) {
    const Rational t = to_rational(config[i].t);
    // sigma_i - n . (P - a) <= 0
    p.rows.push_back(detail::halfplane_row(9, to_rational(config[i].normal), t, line_point_at(anchors, t), -1, 4 + i));
    std::vector<Rational> a(9);
    a[4 + i] = 1;
    p.add(a, 1);
    a[4 + i] = -1;
    p.add(a, 0);
  }
  p.objective.assign(9, Rational(0));
  for (std::size_t i = 4; i < 9; ++i) p.objective[i] = 1;
  detail::add_box(p, 4, Rational(1), anchors);
  lp::Solution sol = lp::maximize(p);
  if (sol.status != lp::Status::optimal) throw Degenerate("deformation LP did not reach an optimum");
  return detail::make_result(config, anchors, line_from(sol.x));
}

/// (AB / BD) / (AC / CD) for positions on a line, with signed lengths.
inline double double_ratio(double A, double B, double C, double D) {
  if (A == B || A == C || A == D || B == C || B == D || C == D) throw CoincidentPoints("positions must be distinct");
  return ((B - A) / (D - B)) / ((C - A) / (D - C));
}

inline Rational double_ratio(const Rational& A, const Rational& B, const Rational& C, const Rational& D) {
  if (A == B || A == C || A == D || B == C || B == D || C == D) throw CoincidentPoints("positions must be distinct");
  return ((B - A) / (D - B)) / ((C - A) / (D - C));
}

/// The double ratio of stencil points c1..c4 in terms of the height gaps
/// h_i = t_{i+1} - t_i: h1 h3 / ((h1 + h2)(h2 + h3)).
inline double stencil_double_ratio(double h1, double h2, double h3) { return h1 * h3 / ((h1 + h2) * (h2 + h3)); }

/// Five collinear points in the projection plane spaced like the heights.
struct Stencil {
  std::array<Vec2, 5> points{};
  std::array<double, 5> heights{};

  /// The line whose parallel projection is this stencil.
  LineParam line() const { return line_through(points[0], heights[0], points[4], heights[4]); }
};

inline Stencil make_stencil(const Vec2& c1, const Vec2& direction, double scale, const std::array<double, 5>& heights) {
  for (int i = 0; i + 1 < 5; ++i)
    if (!(heights[i] < heights[i + 1])) throw ValidationError("stencil heights must increase");
  Stencil s;
  s.heights = heights;
  for (int i = 0; i < 5; ++i) s.points[i] = c1 + (scale * (heights[i] - heights[0])) * direction;
  return s;
}

/// Labels of a four-term pattern i1+ i2- i3+ i4- (plane numbers 1..5).
using Pattern = std::array<int, 4>;

struct SectorReport {
  /// Both inclusions hold, decided on the arcs between boundary directions.
  bool angular = false;
  /// Some code read at infinity contains the subsequence i1+ i2- i3+ i4-.
  bool code_route = false;
};

namespace detail {

inline bool has_subsequence(const Code& c, const std::array<Code::Entry, 4>& pat) {
  std::size_t k = 0;
  for (const Code::Entry& e : c.entries)
    if (k < 4 && e == pat[k]) ++k;
  return k == 4;
}

inline void check_pattern(const Pattern& p) {
  for (int i = 0; i < 4; ++i) {
    if (p[i] < 1 || p[i] > 5) throw ValidationError("pattern labels are 1..5");
    for (int j = 0; j < i; ++j)
      if (p[i] == p[j]) throw ValidationError("pattern labels repeat");
  }
}

// Inclusions H1 & c(H4) in c(H2) and H3 & H2 in c(H4) for half-planes through
// the origin, where c() is the closed complement. Each fails iff an open arc
// of directions lies in the three open sets at once.
inline bool sector_inclusions(const Vec2& n1, const Vec2& n2, const Vec2& n3, const Vec2& n4) {
  std::vector<double> angles;
  for (const Vec2& n : {n1, n2, n3, n4}) {
    const double a = std::atan2(n.y, n.x);
    angles.push_back(wrap_angle(a + std::numbers::pi / 2));
    angles.push_back(wrap_angle(a - std::numbers::pi / 2));
  }
  std::sort(angles.begin(), angles.end());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double lo = angles[i];
    const double hi = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2 * std::numbers::pi;
    if (hi - lo <= 0) continue;
    const double mid = 0.5 * (lo + hi);
    const Vec2 u{std::cos(mid), std::sin(mid)};
    if (dot(n1, u) > 0 && dot(n4, u) < 0 && dot(n2, u) > 0) return false;
    if (dot(n3, u) > 0 && dot(n2, u) > 0 && dot(n4, u) > 0) return false;
  }
  return true;
}

}  // namespace detail

/// Both routes to the hypotheses of the sectorial transversal theorem for
/// planes numbered by increasing height and parallel projection along the
/// anchor line.
inline SectorReport sector_report(const HalfPlaneConfig& config, const Pattern& pattern = {1, 2, 3, 4}) {
  detail::check_pattern(pattern);
  if (!config.generic()) throw Degenerate("half-plane boundaries are not pairwise non-parallel");
  auto n = [&](int label) { return config[label - 1].normal; };
  SectorReport r;
  r.angular = detail::sector_inclusions(n(pattern[0]), n(pattern[1]), n(pattern[2]), n(pattern[3]));
  const std::array<Code::Entry, 4> pat{{{pattern[0], true}, {pattern[1], false}, {pattern[2], true}, {pattern[3], false}}};
  for (int k = 0; k < 10 && !r.code_route; ++k)
    for (int c : {1, -1})
      if (detail::has_subsequence(code_from_configuration(config, {4, 1, k, c}), pat)) r.code_route = true;
  return r;
}

inline bool sector_conditions(const HalfPlaneConfig& config, const Pattern& pattern = {1, 2, 3, 4}) {
  detail::check_pattern(pattern);
  if (!config.generic()) throw Degenerate("half-plane boundaries are not pairwise non-parallel");
  auto n = [&](int label) { return config[label - 1].normal; };
  return detail::sector_inclusions(n(pattern[0]), n(pattern[1]), n(pattern[2]), n(pattern[3]));
}

namespace detail {

inline std::vector<QVec2> rational_vertices(const Section& s) {
  std::vector<QVec2> v;
  for (const Vec2& p : s.vertices()) v.push_back(to_rational(p));
  return v;
}

inline void append_rows(lp::Problem& p, const ConstraintSet& cs) {
  for (const auto& r : cs.rows) {
    std::vector<Rational> a(p.n);
    for (int k = 0; k < 4; ++k) a[k] = r.alpha[k];
    p.add(std::move(a), r.beta, r.equality);
  }
}

inline const Section& section_at(const std::vector<Section>& sections, double t) {
  for (const Section& s : sections)
    if (s.t() == t) return s;
  throw ValidationError("no section at a half-plane height");
}

}  // namespace detail

/// LP search for a line through S_1 & c(B_4), S_2 & B_3, S_3 & B_2 and
/// S_4 & c(B_1), where B_j is the slab over the projected half-plane j and
/// sections[k] sits at the height of plane pattern[k].
inline TransversalReport sectorial_transversal(const std::vector<Section>& sections, const HalfPlaneConfig& config,
                                               const Pattern& pattern = {1, 2, 3, 4}) {
  if (sections.size() != 4) throw ValidationError("need four sections");
  if (!sector_conditions(config, pattern)) throw HypothesisViolated("sector inclusions fail");
  check_anchors_collinear(config);
  const QLineParam anchors = anchor_line(config);
  std::array<Rational, 4> t;
  std::array<QVec2, 4> n;
  for (int k = 0; k < 4; ++k) {
    const HalfPlane& h = config[pattern[k] - 1];
    if (sections[k].t() != h.t) throw ValidationError("section heights do not match the pattern planes");
    t[k] = to_rational(h.t);
    n[k] = to_rational(h.normal);
  }
  {
    bool meets = false;
    const QVec2 base = line_point_at(anchors, t[0]);
    for (const QVec2& v : detail::rational_vertices(sections[0]))
      if (dot(n[3], v - base) <= 0) meets = true;
    if (!meets) throw HypothesisViolated("S_1 lies inside the projection of H_4");
  }
  lp::Problem p(4);
  for (int k = 0; k < 4; ++k) detail::append_rows(p, section_constraint_set(sections[k]));
  auto base = [&](int k) { return line_point_at(anchors, t[k]); };
  p.rows.push_back(detail::halfplane_row(4, n[3], t[0], base(0), +1));
  p.rows.push_back(detail::halfplane_row(4, n[2], t[1], base(1), -1));
  p.rows.push_back(detail::halfplane_row(4, n[1], t[2], base(2), -1));
  p.rows.push_back(detail::halfplane_row(4, n[0], t[3], base(3), +1));
  lp::Solution sol = lp::feasibility(p);
  TransversalReport rep;
  if (sol.status != lp::Status::optimal) return rep;
  rep.feasible = true;
  rep.margin = to_double(sol.value);
  rep.exact_witness = line_from(sol.x);
  rep.witness = to_double(*rep.exact_witness);
  return rep;
}

struct DoubleRatios {
  /// Ratio of the line's points on the four planes.
  Rational stencil;
  /// Ratio of the projected line's crossings with the four boundaries.
  Rational boundary;
};

/// Both double ratios for a line crossing the four pattern planes.
inline DoubleRatios brauer_double_ratios(const HalfPlaneConfig& config, const QLineParam& line,
                                         const Pattern& pattern = {1, 2, 3, 4}) {
  detail::check_pattern(pattern);
  const QLineParam anchors = anchor_line(config);
  std::array<QVec2, 4> c, n;
  for (int k = 0; k < 4; ++k) {
    const HalfPlane& h = config[pattern[k] - 1];
    const Rational t = to_rational(h.t);
    c[k] = line_point_at(line, t) - line_point_at(anchors, t);
    n[k] = to_rational(h.normal);
  }
  const QVec2 dir = c[3] - c[0];
  if (dot(dir, dir) == 0) throw Degenerate("projected line is a point");
  std::array<Rational, 4> sp, sb;
  for (int k = 0; k < 4; ++k) {
    sp[k] = dot(c[k] - c[0], dir) / dot(dir, dir);
    const Rational nd = dot(n[k], dir);
    if (nd == 0) throw Degenerate("projected line is parallel to a boundary");
    sb[k] = -dot(n[k], c[0]) / nd;
  }
  return {double_ratio(sp[0], sp[1], sp[2], sp[3]), double_ratio(sb[0], sb[1], sb[2], sb[3])};
}

/// Evidence that a configuration of the sixth class cannot come from
/// convex-concave sections.
struct ContradictionWitness {
  enum class Kind {
    /// A section is not inside its half-plane; `section` and `point` name it.
    containment,
    /// A line through S_1 & B_3, S_2, S_3 and S_4 & B_2; its third point
    /// would have to lie in the projection of H_3 and outside it at once.
    browder_line,
    /// A line through S_2, S_4 and S_5; the projected segment from its S_2
    /// point to its S_5 point has both ends in pi(H_2).
    segment,
  };
  Kind kind = Kind::containment;
  std::string detail;
  int section = -1;
  std::optional<Vec2> point;
  std::optional<LineParam> line;
  /// Chart-projected points of the line on the five planes (chart labels).
  std::optional<std::array<Vec2, 5>> projected;
  /// Membership of projected[k] in pi(H_j), indexed [k][j].
  std::array<std::array<bool, 5>, 5> in_halfplane{};
};

using CaseOutcome = std::variant<DeformationResult, ContradictionWitness>;

/// The code each class is brought to before its argument runs.
inline Code class_variant(CodeClass k) {
  switch (k) {
    case CodeClass::C1: return Code::parse("1+2-3+5-4-");
    case CodeClass::C2: return Code::parse("1+2-3-4+5-");
    case CodeClass::C3: return Code::parse("1+2-5-3+4-");
    case CodeClass::C4: return Code::parse("1+2-3+5-4+");
    case CodeClass::D5: return Code::parse("1+4-2-3+5-");
    case CodeClass::E6: return Code::parse("1-3+5-2-4+");
    case CodeClass::Trivial: break;
  }
  throw ValidationError("no variant for trivial codes");
}

/// Projective chart in which a chosen projection center goes to infinity.
/// Points (q, t) in coordinates where the anchors sit on the z-axis map to
/// (q / (t - m), -orient / (t - m)); with the center at infinity to
/// (q, orient * t). Planes are then numbered by increasing chart height.
struct Chart {
  std::optional<Rational> m;
  int orient = 1;
  QLineParam anchors;
  /// plane[k] is the sorted plane index numbered k + 1 in the chart.
  std::array<int, 5> plane{};
  std::array<Rational, 5> height{};
  std::array<QVec2, 5> normal{};
  CodingChoice choice;

  Rational chart_height(const Rational& t) const {
    return m ? Rational(-orient) / (t - *m) : Rational(orient) * t;
  }

  QVec2 to_chart(const QVec2& p, const Rational& t) const {
    QVec2 q = p - line_point_at(anchors, t);
    return m ? q / (t - *m) : q;
  }

  /// Normal of the chart image of a half-plane at original height t.
  QVec2 chart_normal(const QVec2& n, const Rational& t) const { return m && t < *m ? -n : n; }

  QLineParam to_original(const QLineParam& y) const {
    QLineParam l;
    if (m) {
      const Rational o(orient);
      l = {y.b, -o * y.a - y.b * *m, y.d, -o * y.c - y.d * *m};
    } else {
      const Rational o(orient);
      l = {o * y.a, y.b, o * y.c, y.d};
    }
    return {l.a + anchors.a, l.b + anchors.b, l.c + anchors.c, l.d + anchors.d};
  }
};

namespace detail {

inline Chart make_chart(const HalfPlaneConfig& config, int m_interval, int orient) {
  Chart ch;
  ch.orient = orient;
  ch.anchors = anchor_line(config);
  if (m_interval < 4) ch.m = (to_rational(config[m_interval].t) + to_rational(config[m_interval + 1].t)) / 2;
  std::array<std::pair<Rational, int>, 5> hs;
  for (int i = 0; i < 5; ++i) hs[i] = {ch.chart_height(to_rational(config[i].t)), i};
  std::sort(hs.begin(), hs.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  for (int k = 0; k < 5; ++k) {
    ch.plane[k] = hs[k].second;
    ch.height[k] = hs[k].first;
    const HalfPlane& h = config[hs[k].second];
    ch.normal[k] = ch.chart_normal(to_rational(h.normal), to_rational(h.t));
  }
  return ch;
}

inline HalfPlaneConfig chart_config(const Chart& ch) {
  std::vector<HalfPlane> hp;
  for (int k = 0; k < 5; ++k) hp.push_back({{0, 0}, to_double(ch.normal[k]), to_double(ch.height[k])});
  return HalfPlaneConfig(hp);
}

/// A chart and coding choice under which the configuration reads as `target`.
inline std::optional<Chart> find_chart(const HalfPlaneConfig& config, const Code& target) {
  for (int mi = 4; mi >= 0; --mi)
    for (int o : {1, -1}) {
      Chart ch = make_chart(config, mi, o);
      HalfPlaneConfig cc = chart_config(ch);
      if (!cc.generic()) continue;
      for (int k = 0; k < 10; ++k)
        for (int c : {1, -1})
          if (code_from_configuration(cc, {4, 1, k, c}) == target) {
            ch.choice = {mi, o, k, c};
            return ch;
          }
    }
  return std::nullopt;
}

struct ChartSections {
  std::array<std::vector<QVec2>, 5> vertices;
  std::array<const Section*, 5> original{};
};

inline ChartSections chart_sections(const Chart& ch, const HalfPlaneConfig& config, const std::vector<Section>& sections) {
  ChartSections cs;
  for (int k = 0; k < 5; ++k) {
    const Section& s = section_at(sections, config[ch.plane[k]].t);
    cs.original[k] = &s;
    const Rational t = to_rational(s.t());
    for (const Vec2& v : s.vertices()) cs.vertices[k].push_back(ch.to_chart(to_rational(v), t));
  }
  return cs;
}

/// Row  n . P(t) (<= or =) 0  in chart coordinates, sense +1 for <=.
inline lp::Row chart_row(std::size_t nvars, const QVec2& n, const Rational& t, int sense, bool equality = false,
                         std::optional<std::size_t> sigma = std::nullopt) {
  return halfplane_row(nvars, n, t, QVec2{0, 0}, sense, sigma, equality);
}

/// Stencil for the pattern i1 i2 i3 i4 (chart labels): c_i1 on the boundary
/// of H_i1 outside H_i4, c_i2 interior to H_i2 & H_i3, c_i3 on the boundary
/// of H_i3 outside H_i4, c_i4 on the boundary of H_i4 outside H_i1.
inline std::optional<QLineParam> pattern_stencil(const Chart& ch, const Pattern& p) {
  lp::Problem lp(5);
  const auto& n = ch.normal;
  const auto& t = ch.height;
  const int i1 = p[0] - 1, i2 = p[1] - 1, i3 = p[2] - 1, i4 = p[3] - 1;
  lp.rows.push_back(chart_row(5, n[i1], t[i1], 1, true));
  lp.rows.push_back(chart_row(5, n[i3], t[i3], 1, true));
  lp.rows.push_back(chart_row(5, n[i4], t[i4], 1, true));
  lp.rows.push_back(chart_row(5, n[i4], t[i1], 1));
  lp.rows.push_back(chart_row(5, n[i4], t[i3], 1));
  lp.rows.push_back(chart_row(5, n[i1], t[i4], 1));
  lp.rows.push_back(chart_row(5, n[i2], t[i2], -1, false, 4));
  lp.rows.push_back(chart_row(5, n[i3], t[i2], -1, false, 4));
  lp.add({0, 0, 0, 0, 1}, 1);
  add_box(lp, 4, Rational(1), QLineParam{});
  lp.objective = {0, 0, 0, 0, 1};
  lp::Solution sol = lp::maximize(lp);
  if (sol.status != lp::Status::optimal || sol.value <= 0) return std::nullopt;
  return line_from(sol.x);
}

inline std::array<QVec2, 5> stencil_points(const Chart& ch, const QLineParam& y) {
  std::array<QVec2, 5> c;
  for (int k = 0; k < 5; ++k) c[k] = line_point_at(y, ch.height[k]);
  return c;
}

/// Whether the chart label k section has some point with n . q <= 0.
inline bool meets_complement(const std::vector<QVec2>& verts, const QVec2& n) {
  return std::any_of(verts.begin(), verts.end(), [&](const QVec2& v) { return dot(n, v) <= 0; });
}

inline std::optional<QLineParam> chart_line_lp(const Chart& ch, const ChartSections& cs, const std::vector<int>& labels,
                                               const std::vector<std::pair<int, int>>& inside) {
  lp::Problem p(4);
  for (int k : labels) append_rows(p, constraint_set(ch.height[k - 1], cs.vertices[k - 1]));
  for (auto [k, j] : inside) p.rows.push_back(chart_row(4, ch.normal[j - 1], ch.height[k - 1], -1));
  lp::Solution sol = lp::feasibility(p);
  if (sol.status != lp::Status::optimal) return std::nullopt;
  return line_from(sol.x);
}

inline ContradictionWitness e6_witness(const Chart& ch, const ChartSections& cs) {
  ContradictionWitness w;
  auto fill = [&](const QLineParam& y) {
    auto c = stencil_points(ch, y);
    std::array<Vec2, 5> pts;
    for (int k = 0; k < 5; ++k) {
      pts[k] = to_double(c[k]);
      for (int j = 0; j < 5; ++j) w.in_halfplane[k][j] = dot(ch.normal[j], c[k]) >= 0;
    }
    w.projected = pts;
    w.line = to_double(ch.to_original(y));
  };
  if (std::any_of(cs.vertices[0].begin(), cs.vertices[0].end(),
                  [&](const QVec2& v) { return dot(ch.normal[2], v) >= 0; })) {
    // S_1 meets pi(H_3).
    auto y = chart_line_lp(ch, cs, {1, 2, 3, 4}, {{1, 3}, {4, 2}});
    if (!y) throw HypothesisViolated("no line meets S_1 & B_3, S_2, S_3, S_4 & B_2; sections are not convex-concave");
    w.kind = ContradictionWitness::Kind::browder_line;
    w.detail = "line through S_1 & B_3, S_2, S_3 and S_4 & B_2";
    fill(*y);
    return w;
  }
  auto y = chart_line_lp(ch, cs, {2, 4, 5}, {});
  if (!y) throw HypothesisViolated("no line meets S_2, S_4, S_5; sections are not convex-concave");
  w.kind = ContradictionWitness::Kind::segment;
  w.detail = "S_1 misses pi(H_3); segment from S_2 to S_5 through S_4";
  fill(*y);
  return w;
}

}  // namespace detail

/// Runs the class-specific argument on a configuration whose sections are
/// given alongside (one per half-plane height). For C1, C3, C4 and D5 a
/// single pattern stencil is built and its remaining point checked; for C2
/// two stencils are matched by a dilation; for E6 a witness of the
/// impossibility is produced.
inline CaseOutcome verify_case(CodeClass cls, const std::vector<Section>& sections, const HalfPlaneConfig& config) {
  if (cls == CodeClass::Trivial) throw ClassMismatch("trivial configurations admit a good deformation directly");
  if (sections.size() != 5) throw ValidationError("need five sections");
  const CodeClass actual = canonical_class(code_from_configuration(config));
  if (actual != cls) throw ClassMismatch("configuration is of class " + class_name(actual));
  const Code variant = class_variant(cls);
  auto chart = detail::find_chart(config, variant);
  if (!chart) throw Degenerate("no coding choice reads the class variant");
  const Chart& ch = *chart;
  detail::ChartSections cs = detail::chart_sections(ch, config, sections);

  // Every section has to lie in its half-plane.
  for (int k = 0; k < 5; ++k)
    for (std::size_t v = 0; v < cs.vertices[k].size(); ++v)
      if (dot(ch.normal[k], cs.vertices[k][v]) < 0) {
        if (cls != CodeClass::E6) throw HypothesisViolated("a section is not contained in its half-plane");
        ContradictionWitness w;
        w.kind = ContradictionWitness::Kind::containment;
        w.section = ch.plane[k];
        w.point = cs.original[k]->vertices()[v];
        w.detail = "section " + std::to_string(ch.plane[k]) + " leaves its half-plane";
        return w;
      }
  if (cls == CodeClass::E6) return detail::e6_witness(ch, cs);

  // The patterns need S_1 to leave pi(H_4) (C1, C3) or pi(H_5) (the rest).
  // When it does not, the configuration is trivial.
  const int last = (cls == CodeClass::C1 || cls == CodeClass::C3) ? 4 : 5;
  if (!detail::meets_complement(cs.vertices[0], ch.normal[last - 1])) {
    DeformationResult r = find_good_deformation(config);
    if (!r.found) throw HypothesisViolated("S_1 lies inside pi(H_" + std::to_string(last) + ") but no good deformation exists");
    r.route = "trivial";
    return r;
  }

  auto require_hypothesis = [&](const Pattern& p) {
    if (!detail::sector_inclusions(to_double(ch.normal[p[0] - 1]), to_double(ch.normal[p[1] - 1]),
                                   to_double(ch.normal[p[2] - 1]), to_double(ch.normal[p[3] - 1])))
      throw HypothesisViolated("sector inclusions fail for the pattern");
  };
  auto stencil_for = [&](const Pattern& p) {
    require_hypothesis(p);
    auto y = detail::pattern_stencil(ch, p);
    if (!y) throw HypothesisViolated("no pattern stencil; the double-ratio inequality fails");
    return *y;
  };

  QLineParam y;
  std::optional<double> dilation;
  if (cls == CodeClass::C2) {
    const QLineParam y1 = stencil_for({1, 2, 4, 5});
    const QLineParam y2 = stencil_for({1, 3, 4, 5});
    const std::array<Rational, 4> u{y1.a, y1.b, y1.c, y1.d}, v{y2.a, y2.b, y2.c, y2.d};
    Rational lambda = 0;
    for (int k = 0; k < 4; ++k)
      if (u[k] != 0) {
        lambda = v[k] / u[k];
        break;
      }
    for (int k = 0; k < 4; ++k)
      if (v[k] != lambda * u[k] || lambda <= 0) throw Degenerate("the two stencils are not related by a dilation");
    dilation = to_double(lambda);
    y = y1;
  } else {
    const Pattern p = (cls == CodeClass::C4 || cls == CodeClass::D5) ? Pattern{1, 2, 3, 5} : Pattern{1, 2, 3, 4};
    y = stencil_for(p);
  }

  DeformationResult r = detail::make_result(config, ch.anchors, ch.to_original(y));
  auto c = detail::stencil_points(ch, y);
  std::array<Vec2, 5> pts;
  for (int k = 0; k < 5; ++k) pts[k] = to_double(c[k]);
  r.stencil = pts;
  r.dilation = dilation;
  r.route = dilation ? "two_stencils" : "stencil";
  return r;
}

struct Placement {
  HalfPlaneConfig config;
  QLineParam line;
  /// Smallest depth of a section vertex inside its half-plane.
  double margin = 0;
};

/// Puts the anchors on the line that pushes every section as deep as
/// possible into its half-plane (depth capped at 1, line coefficients within
/// `radius` of the z-axis). sections[i] gets normals[i].
inline Placement place_halfplanes(const std::vector<Section>& sections, const std::array<Vec2, 5>& normals,
                                  double radius = 4) {
  if (sections.size() != 5) throw ValidationError("need five sections");
  std::array<Vec2, 5> unit;
  for (int i = 0; i < 5; ++i) {
    const double len = norm(normals[i]);
    if (!(len > 0)) throw ValidationError("zero normal");
    unit[i] = normals[i] / len;
  }
  lp::Problem p(5);
  for (int i = 0; i < 5; ++i) {
    const QVec2 n = to_rational(unit[i]);
    const Rational t = to_rational(sections[i].t());
    // n . P(t) + w <= n . v  for every vertex v.
    for (const QVec2& v : detail::rational_vertices(sections[i]))
      p.add({n.x * t, n.x, n.y * t, n.y, Rational(1)}, dot(n, v));
  }
  p.add({0, 0, 0, 0, 1}, 1);
  detail::add_box(p, 4, to_rational(radius), QLineParam{0, 0, 0, 0});
  p.objective = {0, 0, 0, 0, 1};
  lp::Solution sol = lp::maximize(p);
  if (sol.status != lp::Status::optimal) throw Degenerate("placement LP did not reach an optimum");
  const QLineParam line = line_from(sol.x);
  const LineParam l = to_double(line);
  std::vector<HalfPlane> hp;
  for (int i = 0; i < 5; ++i) hp.push_back({line_point_at(l, sections[i].t()), unit[i], sections[i].t()});
  return {HalfPlaneConfig(hp), line, to_double(sol.value)};
}

}  // namespace tlab
