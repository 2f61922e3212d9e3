#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "geom.hpp"
#include "lp.hpp"
#include "parallel.hpp"
#include "polygon_ops.hpp"

namespace tlab {

/// Linear rows alpha . (a, b, c, d) <= beta (or = beta) describing the lines
/// that meet one section.
struct ConstraintSet {
  struct Row {
    std::array<Rational, 4> alpha;
    Rational beta;
    bool equality = false;
  };
  std::vector<Row> rows;

  bool satisfied_by(const QLineParam& l) const {
    for (const Row& r : rows) {
      Rational s = r.alpha[0] * l.a + r.alpha[1] * l.b + r.alpha[2] * l.c + r.alpha[3] * l.d;
      if (r.equality ? s != r.beta : s > r.beta) return false;
    }
    return true;
  }
};

namespace detail {

// Row for  ux * X + uy * Y <= w  (or =) where (X, Y) is the line's point at t.
inline ConstraintSet::Row point_row(const Rational& t, const Rational& ux, const Rational& uy, const Rational& w,
                                    bool equality = false) {
  return {{ux * t, ux, uy * t, uy}, w, equality};
}

}  // namespace detail

/// Constraints on a line for its point at height t to lie in the convex hull
/// of the given counterclockwise vertices (one, two, or at least three).
inline ConstraintSet constraint_set(const Rational& t, const std::vector<QVec2>& v) {
  using detail::point_row;
  ConstraintSet cs;
  if (v.size() == 1) {
    cs.rows.push_back(point_row(t, 1, 0, v[0].x, true));
    cs.rows.push_back(point_row(t, 0, 1, v[0].y, true));
  } else if (v.size() == 2) {
    const QVec2 e = v[1] - v[0];
    cs.rows.push_back(point_row(t, e.y, -e.x, e.y * v[0].x - e.x * v[0].y, true));
    cs.rows.push_back(point_row(t, -e.x, -e.y, -dot(e, v[0])));
    cs.rows.push_back(point_row(t, e.x, e.y, dot(e, v[1])));
  } else {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const QVec2& p = v[i];
      const QVec2 e = v[(i + 1) % v.size()] - p;
      // cross(e, X - p) >= 0
      cs.rows.push_back(point_row(t, e.y, -e.x, e.y * p.x - e.x * p.y));
    }
  }
  return cs;
}

inline ConstraintSet section_constraint_set(const Section& s) {
  std::vector<QVec2> v;
  for (const Vec2& p : s.vertices()) v.push_back(to_rational(p));
  return constraint_set(to_rational(s.t()), v);
}

/// Constraint rows for the line to pass through p at height t.
inline ConstraintSet point_constraint_set(const Rational& t, const QVec2& p) { return constraint_set(t, {p}); }

/// Builds an LP over (a, b, c, d) plus `extra` trailing variables.
inline lp::Problem line_problem(const std::vector<ConstraintSet>& sets, std::size_t extra = 0) {
  lp::Problem p(4 + extra);
  for (const ConstraintSet& cs : sets)
    for (const auto& r : cs.rows) p.add({r.alpha[0], r.alpha[1], r.alpha[2], r.alpha[3]}, r.beta, r.equality);
  return p;
}

inline QLineParam line_from(const std::vector<Rational>& x) { return {x[0], x[1], x[2], x[3]}; }

struct TransversalReport {
  bool feasible = false;
  std::optional<LineParam> witness;
  std::optional<QLineParam> exact_witness;
  /// Largest w with every inequality row satisfied with slack w (capped at 1).
  double margin = 0;
  std::optional<std::vector<std::size_t>> infeasible_subset;
};

namespace detail {

inline void check_distinct_heights(const std::vector<Section>& sections) {
  std::vector<double> ts;
  for (const Section& s : sections) ts.push_back(s.t());
  std::sort(ts.begin(), ts.end());
  if (std::adjacent_find(ts.begin(), ts.end()) != ts.end()) throw DuplicateHeights("section heights repeat");
}

inline bool feasible_subset(const std::vector<ConstraintSet>& sets, const std::vector<std::size_t>& idx) {
  std::vector<ConstraintSet> sub;
  for (std::size_t i : idx) sub.push_back(sets[i]);
  return lp::feasibility(line_problem(sub)).status == lp::Status::optimal;
}

/// Calls fn on each k-subset of {0..n-1} in lexicographic order until it
/// returns true.
template <class Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  if (k > n) return false;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (fn(idx)) return true;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for_each_subset(n, k, [&](const std::vector<std::size_t>& idx) {
    out.push_back(idx);
    return false;
  });
  return out;
}

/// First infeasible subset in lexicographic order, evaluated in parallel
/// blocks so that the answer does not depend on the thread count.
inline std::optional<std::vector<std::size_t>> first_infeasible(const std::vector<ConstraintSet>& sets,
                                                               std::size_t k) {
  auto subsets = all_subsets(sets.size(), k);
  const std::size_t block = 16 * static_cast<std::size_t>(thread_count());
  for (std::size_t lo = 0; lo < subsets.size(); lo += block) {
    const std::size_t hi = std::min(subsets.size(), lo + block);
    auto ok = parallel_map(lo, hi, [&](std::size_t i) { return feasible_subset(sets, subsets[i]) ? 1 : 0; });
    for (std::size_t i = 0; i < ok.size(); ++i)
      if (!ok[i]) return subsets[lo + i];
  }
  return std::nullopt;
}

// Analytic center of the inequality rows by damped Newton, in doubles.
// Returns nullopt if the iteration leaves the interior or stalls.
inline std::optional<LineParam> analytic_center(const lp::Problem& p, const std::vector<Rational>& start) {
  std::vector<Eigen::Vector4d> g;
  std::vector<double> h;
  for (const auto& r : p.rows) {
    if (r.equality) return std::nullopt;
    g.emplace_back(to_double(r.a[0]), to_double(r.a[1]), to_double(r.a[2]), to_double(r.a[3]));
    h.push_back(to_double(r.b));
  }
  Eigen::Vector4d x(to_double(start[0]), to_double(start[1]), to_double(start[2]), to_double(start[3]));
  auto slack_ok = [&](const Eigen::Vector4d& y) {
    for (std::size_t i = 0; i < g.size(); ++i)
      if (!(h[i] - g[i].dot(y) > 0)) return false;
    return true;
  };
  auto phi = [&](const Eigen::Vector4d& y) {
    double s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s -= std::log(h[i] - g[i].dot(y));
    return s;
  };
  if (!slack_ok(x)) return std::nullopt;
  for (int it = 0; it < 100; ++it) {
    Eigen::Vector4d grad = Eigen::Vector4d::Zero();
    Eigen::Matrix4d hess = Eigen::Matrix4d::Zero();
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double s = h[i] - g[i].dot(x);
      grad += g[i] / s;
      hess += g[i] * g[i].transpose() / (s * s);
    }
    Eigen::LDLT<Eigen::Matrix4d> ldlt(hess);
    if (ldlt.info() != Eigen::Success) return std::nullopt;
    Eigen::Vector4d dx = -ldlt.solve(grad);
    const double decrement = -grad.dot(dx);
    if (!std::isfinite(decrement)) return std::nullopt;
    if (decrement < 1e-20) break;
    double step = 1.0;
    const double f0 = phi(x);
    while (step > 1e-12 && (!slack_ok(x + step * dx) || phi(x + step * dx) > f0 - 0.25 * step * decrement))
      step *= 0.5;
    if (step <= 1e-12) break;
    x += step * dx;
  }
  return LineParam{x[0], x[1], x[2], x[3]};
}

}  // namespace detail

/// Exact LP decision of whether one line meets every section. The witness is
/// the LP optimum of the margin problem, or the analytic center of the
/// feasible set when `canonical` is requested and that set has interior.
inline TransversalReport find_transversal(const std::vector<Section>& sections, bool canonical = false) {
  if (sections.empty()) throw ValidationError("no sections");
  detail::check_distinct_heights(sections);
  std::vector<ConstraintSet> sets;
  for (const Section& s : sections) sets.push_back(section_constraint_set(s));
  lp::Problem prob = line_problem(sets);
  lp::Solution sol = lp::feasibility(prob);
  TransversalReport rep;
  if (sol.status != lp::Status::optimal) {
    if (sections.size() <= 5) {
      std::vector<std::size_t> all(sections.size());
      for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
      rep.infeasible_subset = all;
    } else {
      rep.infeasible_subset = detail::first_infeasible(sets, 5);
    }
    return rep;
  }
  rep.feasible = true;
  QLineParam w = line_from(sol.x);
  Rational margin = sol.value;
  const bool has_equality =
      std::any_of(prob.rows.begin(), prob.rows.end(), [](const lp::Row& r) { return r.equality; });
  if (has_equality) {
    // Margin over inequality rows only, equalities held exactly.
    lp::Problem mp(5);
    for (const auto& r : prob.rows) {
      std::vector<Rational> a(r.a);
      a.push_back(r.equality ? Rational(0) : Rational(1));
      mp.add(std::move(a), r.b, r.equality);
    }
    mp.add({0, 0, 0, 0, 1}, 1);
    mp.objective = {0, 0, 0, 0, 1};
    lp::Solution ms = lp::maximize(mp);
    if (ms.status == lp::Status::optimal) {
      w = line_from(ms.x);
      margin = ms.value;
    }
  }
  rep.margin = to_double(margin);
  rep.exact_witness = w;
  rep.witness = to_double(w);
  if (canonical && !has_equality && sections.size() >= 2 && margin > 0) {
    if (auto c = detail::analytic_center(prob, {w.a, w.b, w.c, w.d})) {
      QLineParam qc = to_rational(*c);
      bool ok = true;
      for (const ConstraintSet& cs : sets) ok = ok && cs.satisfied_by(qc);
      if (ok) {
        rep.exact_witness = qc;
        rep.witness = *c;
      }
    }
  }
  return rep;
}

struct HellyReport {
  bool global = false;
  bool all_quintuples = false;
  std::optional<std::vector<std::size_t>> witness_quintuple;
  /// Whether global feasibility and quintuple feasibility agree.
  bool equivalent() const { return global == all_quintuples; }
};

/// Decides global feasibility and feasibility of all 5-subsets independently.
inline HellyReport helly_check(const std::vector<Section>& sections) {
  if (sections.size() < 6) throw TooFewSections("need at least six sections");
  detail::check_distinct_heights(sections);
  std::vector<ConstraintSet> sets;
  for (const Section& s : sections) sets.push_back(section_constraint_set(s));
  HellyReport rep;
  rep.global = lp::feasibility(line_problem(sets)).status == lp::Status::optimal;
  rep.witness_quintuple = detail::first_infeasible(sets, 5);
  rep.all_quintuples = !rep.witness_quintuple;
  return rep;
}

/// Four-section transversal by exact LP.
inline TransversalReport browder_four(const Section& a, const Section& b, const Section& c, const Section& d) {
  return find_transversal({a, b, c, d});
}

struct FixedPointTrace {
  std::vector<Vec2> points;
  bool converged = false;
  /// dist(x, f(x)) at the last iterate.
  double residual = 0;
  /// Line through the last iterate and a point of h1(x) whose h2 image
  /// contains it; present when converged.
  std::optional<LineParam> line;
};

/// Iterates the vertex-centroid selection of f = h2 o h1 on B, where h1(x)
/// is the set of points of C on lines through x meeting A, and h2(y) the set
/// of points of B on lines through y meeting D. All four sections must be
/// full-dimensional polygons.
inline FixedPointTrace fixed_point_trace(const Section& A, const Section& B, const Section& C, const Section& D,
                                         Vec2 start, int max_iter = 200, double tol = 1e-8) {
  for (const Section* s : {&A, &B, &C, &D})
    if (s->kind() != Section::Kind::polygon) throw InvalidPolygon("fixed_point_trace needs polygons");
  detail::check_distinct_heights({A, B, C, D});
  if (dist_point_polygon(start, B).distance > tol) throw ValidationError("start is not in B");
  const double lambda = (C.t() - B.t()) / (A.t() - B.t());
  const double mu = (B.t() - C.t()) / (D.t() - C.t());

  auto h1 = [&](const Vec2& x) {
    ConvexPoly img = clip_convex(homothety(A.vertices(), x, lambda), C.vertices());
    if (img.empty()) throw EmptyImage("no line through the B point meets A and C");
    return img;
  };
  auto f = [&](const Vec2& x) {
    ConvexPoly swept = minkowski_combination(h1(x), 1.0 - mu, D.vertices(), mu);
    ConvexPoly img = clip_convex(swept, B.vertices());
    if (img.empty()) throw EmptyImage("no line through h1(x) meets D and B");
    return img;
  };

  FixedPointTrace tr;
  Vec2 x = start;
  tr.points.push_back(x);
  for (int it = 0; it < max_iter; ++it) {
    ConvexPoly fx = f(x);
    tr.residual = distance_to(x, fx);
    if (tr.residual <= tol) {
      tr.converged = true;
      break;
    }
    x = vertex_centroid(fx);
    tr.points.push_back(x);
  }
  if (!tr.converged) {
    tr.residual = distance_to(x, f(x));
    tr.converged = tr.residual <= tol;
  }
  if (tr.converged) {
    // y in h1(x) with x in (1 - mu) y + mu D, i.e. y in (x - mu D) / (1 - mu).
    ConvexPoly pre = homothety(D.vertices(), x, mu / (mu - 1.0));
    ConvexPoly ys = clip_convex(h1(x), pre, 1e-9);
    Vec2 y = ys.empty() ? vertex_centroid(h1(x)) : vertex_centroid(ys);
    tr.line = line_through(x, B.t(), y, C.t());
  }
  return tr;
}

}  // namespace tlab
