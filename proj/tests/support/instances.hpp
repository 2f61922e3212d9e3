#pragma once

// Instance generators and independent oracles shared by the unit tests and
// the acceptance binary.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "tlab/tlab.hpp"

namespace tlab::testing {

/// Linear images of convex-concave stacks are convex-concave; scaling by a
/// power of two keeps coordinates exact.
inline SectionStack scaled(const SectionStack& st, double f) {
  std::vector<Section> out;
  for (const Section& s : st.sections()) {
    std::vector<Vec2> v;
    for (const Vec2& p : s.vertices()) v.push_back(f * p);
    out.emplace_back(s.t(), v);
  }
  return SectionStack(out, st.provenance());
}

/// Five random small polygons at random heights with independent centers.
inline std::vector<Section> random_family(std::uint64_t seed, std::size_t count = 5, double radius = 0.5) {
  Rng rng(seed);
  std::vector<Section> secs;
  double t = 0;
  for (std::size_t i = 0; i < count; ++i) {
    t += rng.quantized(0.5, 2.0);
    const Vec2 c{rng.quantized(-2, 2), rng.quantized(-2, 2)};
    secs.emplace_back(t, random_convex_polygon(rng, c, radius, 5));
  }
  return secs;
}

struct ChebyshevInstance {
  std::uint64_t seed = 0;
  std::vector<Section> sections;
};

/// Families without a transversal whose Chebyshev optimum has all five
/// distances equal, so the half-plane construction applies in full.
inline std::vector<ChebyshevInstance> equioscillating_instances(std::size_t count, std::uint64_t first_seed = 1) {
  std::vector<ChebyshevInstance> out;
  for (std::uint64_t seed = first_seed; out.size() < count; ++seed) {
    auto secs = random_family(seed);
    if (find_transversal(secs).feasible) continue;
    ChebyshevResult r = chebyshev_line(secs);
    if (r.spread() > 1e-7 * (1 + r.value)) continue;
    out.push_back({seed, secs});
  }
  return out;
}

/// The five alternating point sections (t, x, y) = (i, (-1)^(i+1), 0).
inline std::vector<Section> alternating_points() {
  std::vector<Section> s;
  for (int i = 1; i <= 5; ++i) s.emplace_back(i, std::vector<Vec2>{{i % 2 ? 1.0 : -1.0, 0.0}});
  return s;
}

/// Whether some line stays within r of every section, with the r-disc
/// replaced by a circumscribed polygon. The directions include every edge
/// normal, so the relaxed set lies within r / cos(pi / k) of each section.
inline bool outer_offset_feasible(const std::vector<Section>& secs, double r, int k = 256) {
  lp::Problem p(4);
  const Rational rq = to_rational(r);
  for (const Section& s : secs) {
    const Rational t = to_rational(s.t());
    std::vector<Vec2> dirs;
    for (int j = 0; j < k; ++j) {
      const double a = 2 * std::numbers::pi * j / k;
      dirs.push_back({std::cos(a), std::sin(a)});
    }
    const auto& v = s.vertices();
    if (v.size() >= 2)
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 e = v[(i + 1) % v.size()] - v[i];
        const Vec2 n = Vec2{e.y, -e.x} / norm(e);
        dirs.push_back(n);
        dirs.push_back(-n);
      }
    for (const Vec2& u : dirs) {
      const QVec2 qu = to_rational(u);
      // Rounded directions are not exactly unit; scale r by the true length.
      const Rational len2 = dot(qu, qu);
      Rational h = dot(qu, to_rational(v[0]));
      for (const Vec2& x : v) h = std::max(h, dot(qu, to_rational(x)));
      const Rational scale = to_rational(std::sqrt(to_double(len2)) * (1 + 1e-15));
      p.add({qu.x * t, qu.x, qu.y * t, qu.y}, h + rq * scale);
    }
  }
  return lp::feasibility(p).status == lp::Status::optimal;
}

/// Smallest objective over a regular grid of lines around the least-squares
/// line through the centroids.
inline double grid_minimum(const std::vector<Section>& secs, int per_axis = 9, double half_width = 2) {
  double st = 0, stt = 0, sx = 0, sy = 0, stx = 0, sty = 0;
  const double n = static_cast<double>(secs.size());
  for (const Section& s : secs) {
    const Vec2 c = s.centroid();
    st += s.t();
    stt += s.t() * s.t();
    sx += c.x;
    sy += c.y;
    stx += s.t() * c.x;
    sty += s.t() * c.y;
  }
  const double den = n * stt - st * st;
  const double a = (n * stx - st * sx) / den, c = (n * sty - st * sy) / den;
  const LineParam mid{a, (sx - a * st) / n, c, (sy - c * st) / n};
  double best = objective(secs, mid);
  const double step = 2 * half_width / (per_axis - 1);
  for (int i = 0; i < per_axis; ++i)
    for (int j = 0; j < per_axis; ++j)
      for (int k = 0; k < per_axis; ++k)
        for (int l = 0; l < per_axis; ++l) {
          const LineParam q{mid.a + (i * step - half_width) * 0.25, mid.b + j * step - half_width,
                            mid.c + (k * step - half_width) * 0.25, mid.d + l * step - half_width};
          best = std::min(best, objective(secs, q));
        }
  return best;
}

struct BrauerInstance {
  std::uint64_t seed = 0;
  SectionStack stack;
  HalfPlaneConfig config;
  TransversalReport line;
};

/// Anchor placement that keeps every section inside its half-plane while a
/// chosen vertex of S_1 stays outside pi(H_4), taking the deepest such
/// placement over the vertices of S_1.
inline std::optional<Placement> place_with_s1_outside_h4(const std::vector<Section>& secs,
                                                         const std::array<Vec2, 5>& normals) {
  std::optional<Placement> best;
  for (const Vec2& pin : secs[0].vertices()) {
    lp::Problem p(5);
    for (int i = 0; i < 5; ++i) {
      const QVec2 n = to_rational(normals[i]);
      const Rational t = to_rational(secs[i].t());
      for (const Vec2& v : secs[i].vertices()) p.add({n.x * t, n.x, n.y * t, n.y, Rational(1)}, dot(n, to_rational(v)));
    }
    const QVec2 n4 = to_rational(normals[3]);
    const Rational t1 = to_rational(secs[0].t());
    p.add({-n4.x * t1, -n4.x, -n4.y * t1, -n4.y, Rational(0)}, -dot(n4, to_rational(pin)));
    p.add({0, 0, 0, 0, 1}, 1);
    detail::add_box(p, 4, Rational(4), QLineParam{0, 0, 0, 0});
    p.objective = {0, 0, 0, 0, 1};
    lp::Solution sol = lp::maximize(p);
    if (sol.status != lp::Status::optimal) continue;
    const double m = to_double(sol.value);
    if (best && best->margin >= m) continue;
    const QLineParam line = line_from(sol.x);
    const LineParam l = to_double(line);
    std::vector<HalfPlane> hp;
    for (int i = 0; i < 5; ++i) hp.push_back({line_point_at(l, secs[i].t()), normals[i], secs[i].t()});
    best = Placement{HalfPlaneConfig(hp), line, m};
  }
  return best;
}

/// Convex-concave stacks with half-planes whose code contains 1+2-3+4-,
/// every section strictly inside its half-plane and S_1 leaving pi(H_4).
inline std::vector<BrauerInstance> brauer_instances(std::size_t count, std::uint64_t first_seed = 1) {
  std::vector<Code> patterned;
  for (int i = 0; i < Code::count; ++i) {
    const Code c = Code::from_index(i);
    if (detail::has_subsequence(c, {{{1, true}, {2, false}, {3, true}, {4, false}}})) patterned.push_back(c);
  }
  std::vector<BrauerInstance> out;
  Rng rng(first_seed);
  for (std::uint64_t seed = first_seed; out.size() < count; ++seed) {
    const SectionStack st = scaled(random_convex_concave(seed, 5), 0.0625);
    const Code code = patterned[rng.below(patterned.size())];
    const HalfPlaneConfig shape = realize_code(code, {1, 2, 3, 4, 5}, rng.uniform(0, 2 * std::numbers::pi));
    std::array<Vec2, 5> normals;
    for (int i = 0; i < 5; ++i) {
      const double a = std::atan2(shape[i].normal.y, shape[i].normal.x) + rng.uniform(-0.1, 0.1);
      normals[i] = {std::cos(a), std::sin(a)};
    }
    std::vector<HalfPlane> probe;
    for (int i = 0; i < 5; ++i) probe.push_back({{0, 0}, normals[i], st[i].t()});
    const HalfPlaneConfig c0(probe);
    if (!c0.generic() || !sector_conditions(c0)) continue;
    auto pl = place_with_s1_outside_h4(st.sections(), normals);
    if (!pl || pl->margin <= 0) continue;
    TransversalReport rep = sectorial_transversal(st.pick({0, 1, 2, 3}), pl->config);
    out.push_back({seed, st, pl->config, rep});
  }
  return out;
}

struct ClassInstance {
  SectionStack stack;
  Placement placement;
};

/// A convex-concave stack with half-planes realizing `cls` at a random
/// rotation and anchors on the deepest containment line.
inline ClassInstance class_instance(CodeClass cls, std::uint64_t seed) {
  Rng rng(seed ^ 0x5bd1e995u);
  const SectionStack st = scaled(random_convex_concave(seed, 5), 0.0625);
  const HalfPlaneConfig shape =
      realize_code(class_representative(cls), {1, 2, 3, 4, 5}, rng.uniform(0, 2 * std::numbers::pi));
  std::array<Vec2, 5> normals;
  for (int i = 0; i < 5; ++i) normals[i] = shape[i].normal;
  return {st, place_halfplanes(st.sections(), normals)};
}

}  // namespace tlab::testing
