#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rational.hpp"

namespace tlab::lp {

/// a . x <= b, or a . x = b when equality is set.
struct Row {
  std::vector<Rational> a;
  Rational b;
  bool equality = false;
};

/// maximize objective . x subject to rows, x free.
struct Problem {
  std::size_t n = 0;
  std::vector<Row> rows;
  std::vector<Rational> objective;

  explicit Problem(std::size_t vars = 0) : n(vars), objective(vars) {}

  void add(std::vector<Rational> a, Rational b, bool equality = false) {
    a.resize(n);
    rows.push_back({std::move(a), std::move(b), equality});
  }
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  std::vector<Rational> x;
  Rational value;
};

namespace detail {

// Revised simplex on  min cost . y  s.t.  M y = rhs, y >= 0, rhs >= 0.
// Columns are stored sparse-free as dense vectors; M has few rows.
class Simplex {
 public:
  Simplex(std::vector<std::vector<Rational>> cols, std::vector<Rational> rhs)
      : m_(rhs.size()), cols_(std::move(cols)), rhs_(std::move(rhs)) {}

  enum class Result { optimal, infeasible, unbounded };

  Result solve(const std::vector<Rational>& cost) {
    const std::size_t ncols = cols_.size();
    // Phase 1 with one artificial per row, indices ncols + i.
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) basis_[i] = ncols + i;
    binv_.assign(m_, std::vector<Rational>(m_));
    for (std::size_t i = 0; i < m_; ++i) binv_[i][i] = 1;
    xb_ = rhs_;

    std::vector<Rational> c1(ncols + m_);
    for (std::size_t i = 0; i < m_; ++i) c1[ncols + i] = 1;
    if (!iterate(c1, true)) return Result::infeasible;  // cannot happen: phase 1 is bounded
    Rational infeas = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= ncols) infeas += xb_[i];
    if (infeas > 0) return Result::infeasible;

    drive_out_artificials();

    std::vector<Rational> c2(ncols + m_);
    for (std::size_t j = 0; j < ncols; ++j) c2[j] = cost[j];
    if (!iterate(c2, false)) return Result::unbounded;
    cost_ = c2;
    return Result::optimal;
  }

  /// Simplex multipliers pi = c_B^T B^{-1} of the last phase.
  std::vector<Rational> multipliers() const {
    std::vector<Rational> pi(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (cost_[basis_[i]] == 0) continue;
      for (std::size_t k = 0; k < m_; ++k) pi[k] += cost_[basis_[i]] * binv_[i][k];
    }
    return pi;
  }

  Rational objective() const {
    Rational v = 0;
    for (std::size_t i = 0; i < m_; ++i) v += cost_[basis_[i]] * xb_[i];
    return v;
  }

 private:
  std::vector<Rational> column(std::size_t j) const {
    if (j < cols_.size()) return cols_[j];
    std::vector<Rational> e(m_);
    e[j - cols_.size()] = 1;
    return e;
  }

  std::vector<Rational> ftran(const std::vector<Rational>& col) const {
    std::vector<Rational> u(m_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < m_; ++k)
        if (col[k] != 0 && binv_[i][k] != 0) u[i] += binv_[i][k] * col[k];
    return u;
  }

  void pivot(std::size_t r, std::size_t entering, const std::vector<Rational>& u) {
    const Rational piv = u[r];
    for (std::size_t k = 0; k < m_; ++k) binv_[r][k] /= piv;
    xb_[r] /= piv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || u[i] == 0) continue;
      const Rational f = u[i];
      for (std::size_t k = 0; k < m_; ++k)
        if (binv_[r][k] != 0) binv_[i][k] -= f * binv_[r][k];
      xb_[i] -= f * xb_[r];
    }
    basis_[r] = entering;
  }

  // Returns false on unboundedness. Artificial columns may only enter in
  // phase 1. Dantzig pricing; Bland's rule after a run of degenerate pivots.
  bool iterate(const std::vector<Rational>& cost, bool phase1) {
    cost_ = cost;
    const std::size_t ncols = cols_.size();
    const std::size_t limit = phase1 ? ncols + m_ : ncols;
    std::vector<char> in_basis(ncols + m_, 0);
    for (std::size_t j : basis_) in_basis[j] = 1;
    std::size_t degenerate_run = 0;
    for (;;) {
      std::vector<Rational> pi = multipliers();
      const bool bland = degenerate_run > 2 * (m_ + 1);
      std::optional<std::size_t> entering;
      Rational best = 0;
      for (std::size_t j = 0; j < limit; ++j) {
        if (in_basis[j]) continue;
        Rational d = cost[j];
        if (j < ncols) {
          for (std::size_t k = 0; k < m_; ++k)
            if (pi[k] != 0 && cols_[j][k] != 0) d -= pi[k] * cols_[j][k];
        } else {
          d -= pi[j - ncols];
        }
        if (d < 0 && (!entering || (!bland && d < best))) {
          entering = j;
          best = d;
          if (bland) break;
        }
      }
      if (!entering) return true;
      std::vector<Rational> u = ftran(column(*entering));
      std::optional<std::size_t> leave;
      Rational ratio;
      for (std::size_t i = 0; i < m_; ++i) {
        if (u[i] <= 0) continue;
        Rational q = xb_[i] / u[i];
        if (!leave || q < ratio || (q == ratio && basis_[i] < basis_[*leave])) {
          leave = i;
          ratio = q;
        }
      }
      if (!leave) return false;
      degenerate_run = ratio == 0 ? degenerate_run + 1 : 0;
      in_basis[basis_[*leave]] = 0;
      in_basis[*entering] = 1;
      pivot(*leave, *entering, u);
    }
  }

  // Artificials left at level zero are exchanged for structural columns where
  // possible; the rest mark redundant rows and stay basic at zero forever.
  void drive_out_artificials() {
    const std::size_t ncols = cols_.size();
    std::vector<char> in_basis(ncols, 0);
    for (std::size_t j : basis_)
      if (j < ncols) in_basis[j] = 1;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < ncols) continue;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (in_basis[j]) continue;
        Rational ur = 0;
        for (std::size_t k = 0; k < m_; ++k)
          if (binv_[r][k] != 0 && cols_[j][k] != 0) ur += binv_[r][k] * cols_[j][k];
        if (ur == 0) continue;
        pivot(r, j, ftran(cols_[j]));
        in_basis[j] = 1;
        break;
      }
    }
  }

  std::size_t m_;
  std::vector<std::vector<Rational>> cols_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<std::vector<Rational>> binv_;
  std::vector<Rational> xb_;
  std::vector<Rational> cost_;
};

struct Expanded {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
};

inline Expanded expand(const Problem& p) {
  Expanded e;
  for (const Row& r : p.rows) {
    e.a.push_back(r.a);
    e.b.push_back(r.b);
    if (r.equality) {
      std::vector<Rational> neg(r.a.size());
      for (std::size_t k = 0; k < r.a.size(); ++k) neg[k] = -r.a[k];
      e.a.push_back(std::move(neg));
      e.b.push_back(-r.b);
    }
  }
  return e;
}

// Solves the dual  min b.y  s.t.  A^T y = c, y >= 0  whose multipliers are
// the primal optimum. Returns nullopt when the dual is infeasible, in which
// case the primal is infeasible or unbounded.
inline std::optional<Solution> solve_via_dual(const Expanded& e, const std::vector<Rational>& c) {
  const std::size_t n = c.size();
  const std::size_t rows = e.a.size();
  std::vector<Rational> flip(n, Rational(1));
  std::vector<Rational> rhs(c);
  for (std::size_t k = 0; k < n; ++k)
    if (rhs[k] < 0) {
      flip[k] = -1;
      rhs[k] = -rhs[k];
    }
  std::vector<std::vector<Rational>> cols(rows, std::vector<Rational>(n));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < n; ++k) cols[i][k] = flip[k] * e.a[i][k];
  Simplex s(std::move(cols), rhs);
  auto res = s.solve(e.b);
  if (res == Simplex::Result::infeasible) return std::nullopt;
  Solution sol;
  if (res == Simplex::Result::unbounded) {
    sol.status = Status::infeasible;
    return sol;
  }
  std::vector<Rational> pi = s.multipliers();
  sol.status = Status::optimal;
  sol.x.resize(n);
  for (std::size_t k = 0; k < n; ++k) sol.x[k] = flip[k] * pi[k];
  sol.value = s.objective();
  return sol;
}

}  // namespace detail

/// Feasibility with a margin: maximizes w subject to a.x + w <= b on every
/// inequality row and on both halves of every equality row, w <= 1.
/// Feasible iff the optimal w is >= 0; x is then a feasible point.
inline Solution feasibility(const Problem& p) {
  detail::Expanded e = detail::expand(p);
  for (auto& row : e.a) row.push_back(Rational(1));
  std::vector<Rational> cap(p.n + 1);
  cap[p.n] = 1;
  e.a.push_back(cap);
  e.b.push_back(Rational(1));
  std::vector<Rational> c(p.n + 1);
  c[p.n] = 1;
  auto sol = detail::solve_via_dual(e, c);
  Solution out;
  if (!sol || sol->status != Status::optimal || sol->value < 0) {
    out.status = Status::infeasible;
    return out;
  }
  out.status = Status::optimal;
  out.value = sol->value;
  out.x.assign(sol->x.begin(), sol->x.begin() + static_cast<std::ptrdiff_t>(p.n));
  return out;
}

inline Solution maximize(const Problem& p) {
  detail::Expanded e = detail::expand(p);
  auto sol = detail::solve_via_dual(e, p.objective);
  if (sol) return *sol;
  Solution out;
  out.status = feasibility(p).status == Status::optimal ? Status::unbounded : Status::infeasible;
  return out;
}

/// Exact check of every row at x.
inline bool satisfies(const Problem& p, const std::vector<Rational>& x) {
  for (const Row& r : p.rows) {
    Rational s = 0;
    for (std::size_t k = 0; k < p.n; ++k) s += r.a[k] * x[k];
    if (r.equality ? s != r.b : s > r.b) return false;
  }
  return true;
}

}  // namespace tlab::lp
