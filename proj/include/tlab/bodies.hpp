#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "geom.hpp"
#include "parallel.hpp"
#include "polygon_ops.hpp"
#include "random.hpp"
#include "transversal.hpp"

namespace tlab {

enum class Provenance { hyperboloid, split_cone, custom, random };

inline std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::hyperboloid: return "hyperboloid";
    case Provenance::split_cone: return "split_cone";
    case Provenance::custom: return "custom";
    case Provenance::random: return "random";
  }
  return "custom";
}

/// Sections sorted by strictly increasing height.
class SectionStack {
 public:
  SectionStack() = default;

  SectionStack(std::vector<Section> sections, Provenance provenance = Provenance::custom)
      : sections_(std::move(sections)), provenance_(provenance) {
    std::stable_sort(sections_.begin(), sections_.end(),
                     [](const Section& a, const Section& b) { return a.t() < b.t(); });
    for (std::size_t i = 0; i + 1 < sections_.size(); ++i)
      if (sections_[i].t() == sections_[i + 1].t()) throw DuplicateHeights("heights not distinct");
  }

  const std::vector<Section>& sections() const { return sections_; }
  std::size_t size() const { return sections_.size(); }
  const Section& operator[](std::size_t i) const { return sections_[i]; }
  Provenance provenance() const { return provenance_; }

  /// The sections at the given positions, in that order.
  std::vector<Section> pick(const std::vector<std::size_t>& idx) const {
    std::vector<Section> out;
    for (std::size_t i : idx) out.push_back(sections_.at(i));
    return out;
  }

 private:
  std::vector<Section> sections_;
  Provenance provenance_ = Provenance::custom;
};

/// Regular n-gon with a vertex on the positive x-axis.
inline std::vector<Vec2> regular_polygon(double radius, int n, Vec2 center = {0, 0}) {
  std::vector<Vec2> v;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * std::numbers::pi * k / n;
    v.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return v;
}

/// Inscribed n-gons of the discs of radius sqrt(1 + t^2).
inline SectionStack hyperboloid_sections(const std::vector<double>& heights, int n_vertices = 16) {
  if (n_vertices < 8) throw ValidationError("hyperboloid sections need at least 8 vertices");
  std::vector<Section> out;
  for (double t : heights) out.emplace_back(t, regular_polygon(std::sqrt(1 + t * t), n_vertices));
  return SectionStack(out, Provenance::hyperboloid);
}

/// Inscribed n-gons of the circles of radius |t| - 1.
inline SectionStack split_cone_sections(const std::vector<double>& heights, int n_vertices = 16) {
  if (n_vertices < 3) throw ValidationError("need at least 3 vertices");
  std::vector<Section> out;
  for (double t : heights) {
    if (!(std::fabs(t) > 1)) throw InvalidHeight("split cone sections need |t| > 1");
    out.emplace_back(t, regular_polygon(std::fabs(t) - 1, n_vertices));
  }
  return SectionStack(out, Provenance::split_cone);
}

/// Hull of the bundle's points at each height, for lines given as
/// LineParams.
inline SectionStack bundle_sections(const std::vector<LineParam>& bundle, const std::vector<double>& heights,
                                    Provenance provenance = Provenance::custom) {
  if (bundle.empty()) throw ValidationError("empty bundle");
  std::vector<Section> out;
  for (double t : heights) {
    std::vector<Vec2> pts;
    for (const LineParam& l : bundle) pts.push_back(line_point_at(l, t));
    out.emplace_back(t, pts);
  }
  return SectionStack(out, provenance);
}

/// Random convex polygon with 3..max_vertices vertices around center, with
/// coordinates on the 1/1024 grid.
inline std::vector<Vec2> random_convex_polygon(Rng& rng, Vec2 center, double radius, int max_vertices = 7) {
  for (;;) {
    const int n = 3 + static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, max_vertices - 2))));
    std::vector<Vec2> pts;
    for (int k = 0; k < n; ++k) {
      const double a = rng.uniform(0, 2 * std::numbers::pi);
      const double r = radius * rng.uniform(0.5, 1.0);
      pts.push_back({std::round((center.x + r * std::cos(a)) * 1024) / 1024,
                     std::round((center.y + r * std::sin(a)) * 1024) / 1024});
    }
    auto hull = convex_hull(pts);
    if (hull.size() >= 3) return hull;
  }
}

/// Stack whose section at height t is (1 - s) P_low + s P_high with
/// s = (t - t_min) / (t_max - t_min), for random polygons P_low, P_high.
/// Every segment from P_low to P_high lies in the body, so every point of
/// every section is on a bundle line meeting all sections.
///
/// The property is tight: a section is exactly the set of its points on a
/// line meeting two others. Default heights therefore make s dyadic so the
/// vertices come out exact; caller-supplied heights may round.
inline SectionStack random_convex_concave(std::uint64_t seed, int n_sections, std::vector<double> heights = {}) {
  if (n_sections < 1) throw ValidationError("need at least one section");
  Rng rng(seed);
  if (heights.empty()) {
    int den = 64;
    while (den < 4 * n_sections) den *= 2;
    const double t0 = std::round(rng.uniform(-2, 2) * 8) / 8;
    const double span = 8;
    std::vector<int> steps{0};
    if (n_sections > 1) steps.push_back(den);
    while (static_cast<int>(steps.size()) < n_sections) {
      const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(den - 1)));
      if (std::find(steps.begin(), steps.end(), k) == steps.end()) steps.push_back(k);
    }
    for (int k : steps) heights.push_back(t0 + span * k / den);
  }
  if (static_cast<int>(heights.size()) != n_sections) throw ValidationError("heights do not match section count");
  std::sort(heights.begin(), heights.end());
  const double lo = heights.front(), hi = heights.back();
  const Vec2 c_low{rng.quantized(-2, 2), rng.quantized(-2, 2)};
  const Vec2 c_high{rng.quantized(-2, 2), rng.quantized(-2, 2)};
  const ConvexPoly low = random_convex_polygon(rng, c_low, rng.uniform(0.5, 2.0));
  const ConvexPoly high = random_convex_polygon(rng, c_high, rng.uniform(0.5, 2.0));
  std::vector<Section> out;
  for (double t : heights) {
    const double s = hi > lo ? (t - lo) / (hi - lo) : 0.0;
    out.emplace_back(t, minkowski_combination(low, 1 - s, high, s));
  }
  return SectionStack(out, Provenance::random);
}

struct ConvexConcavityReport {
  bool pass = true;
  std::size_t tested = 0;
  struct Witness {
    std::array<std::size_t, 3> triple{};
    /// Stack position of the section holding the point.
    std::size_t section = 0;
    Vec2 point;
  };
  std::optional<Witness> witness;
};

namespace detail {

inline bool line_through_meets(const Section& at, const QVec2& p, const Section& s1, const Section& s2) {
  std::vector<ConstraintSet> sets{point_constraint_set(to_rational(at.t()), p), section_constraint_set(s1),
                                  section_constraint_set(s2)};
  return lp::feasibility(line_problem(sets)).status == lp::Status::optimal;
}

inline bool line_through_meets(const Section& at, const Vec2& p, const Section& s1, const Section& s2) {
  return line_through_meets(at, to_rational(p), s1, s2);
}

/// Exactly on the boundary; a rounded point can fall just outside.
inline QVec2 random_boundary_point(Rng& rng, const Section& s) {
  const auto& v = s.vertices();
  if (v.size() == 1) return to_rational(v[0]);
  const std::size_t edges = v.size() == 2 ? 1 : v.size();
  const std::size_t i = rng.below(edges);
  const Rational u = to_rational(rng.uniform());
  const QVec2 a = to_rational(v[i]), b = to_rational(v[(i + 1) % v.size()]);
  return a + u * (b - a);
}

}  // namespace detail

/// Samples triples i < j < k and a boundary point p of one of them, and asks
/// the LP whether some line through p meets the other two. With `affine`
/// only points of the middle section are sampled.
inline ConvexConcavityReport convex_concavity_check(const SectionStack& stack, int samples, std::uint64_t seed,
                                                    bool affine = false) {
  ConvexConcavityReport rep;
  const std::size_t n = stack.size();
  if (n < 3 || samples <= 0) return rep;
  const Rng base(seed);
  const std::size_t total = static_cast<std::size_t>(samples);
  const std::size_t block = 64 * static_cast<std::size_t>(thread_count());
  for (std::size_t lo = 0; lo < total; lo += block) {
    const std::size_t hi = std::min(total, lo + block);
    auto res = parallel_map(lo, hi, [&](std::size_t s) {
      Rng rng = base.split(s);
      std::array<std::size_t, 3> tr{};
      do {
        for (auto& x : tr) x = rng.below(n);
        std::sort(tr.begin(), tr.end());
      } while (tr[0] == tr[1] || tr[1] == tr[2]);
      const std::size_t which = affine ? 1 : rng.below(3);
      const Section& at = stack[tr[which]];
      const QVec2 p = detail::random_boundary_point(rng, at);
      const Section& s1 = stack[tr[which == 0 ? 1 : 0]];
      const Section& s2 = stack[tr[which == 2 ? 1 : 2]];
      std::optional<ConvexConcavityReport::Witness> w;
      if (!detail::line_through_meets(at, p, s1, s2)) w = ConvexConcavityReport::Witness{tr, tr[which], to_double(p)};
      return w;
    });
    for (std::size_t i = 0; i < res.size(); ++i) {
      ++rep.tested;
      if (res[i]) {
        rep.pass = false;
        rep.witness = res[i];
        return rep;
      }
    }
  }
  return rep;
}

/// Exact version: the points of a section through which a line meets two
/// other sections form a convex set, so checking every vertex of every
/// section of every triple decides the property.
inline ConvexConcavityReport convex_concavity_exact(const SectionStack& stack, bool affine = false) {
  ConvexConcavityReport rep;
  const std::size_t n = stack.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::array<std::size_t, 3> tr{i, j, k};
        for (std::size_t w = 0; w < 3; ++w) {
          if (affine && w != 1) continue;
          const Section& at = stack[tr[w]];
          const Section& s1 = stack[tr[w == 0 ? 1 : 0]];
          const Section& s2 = stack[tr[w == 2 ? 1 : 2]];
          for (const Vec2& p : at.vertices()) {
            ++rep.tested;
            if (!detail::line_through_meets(at, p, s1, s2)) {
              rep.pass = false;
              rep.witness = ConvexConcavityReport::Witness{tr, tr[w], p};
              return rep;
            }
          }
        }
      }
  return rep;
}

}  // namespace tlab
