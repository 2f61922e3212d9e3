#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"
#include "geom.hpp"
#include "transversal.hpp"

namespace tlab {

struct SectionDistance {
  Vec2 a;  ///< line point at the section height
  Vec2 s;  ///< closest point of the section
  double dist = 0;
};

struct ChebyshevResult {
  LineParam line;
  double value = 0;
  std::vector<SectionDistance> per_section;
  /// Newton steps taken by the barrier method (0 when a transversal exists).
  int iterations = 0;
  /// Whether the equal-distance Newton polish was applied.
  bool polished = false;

  double spread() const {
    if (per_section.empty()) return 0;
    auto [lo, hi] = std::minmax_element(per_section.begin(), per_section.end(),
                                        [](const auto& p, const auto& q) { return p.dist < q.dist; });
    return hi->dist - lo->dist;
  }
};

/// max over sections of the distance from the line's point to the section.
inline double objective(const std::vector<Section>& sections, const LineParam& line) {
  double f = 0;
  for (const Section& s : sections) f = std::max(f, dist_point_polygon(line_point_at(line, s.t()), s).distance);
  return f;
}

inline std::vector<SectionDistance> distances(const std::vector<Section>& sections, const LineParam& line) {
  std::vector<SectionDistance> out;
  for (const Section& s : sections) {
    Vec2 a = line_point_at(line, s.t());
    DistanceResult d = dist_point_polygon(a, s);
    out.push_back({a, d.closest, d.distance});
  }
  return out;
}

/// Sections translated so that the line becomes the z-axis.
inline std::vector<Section> normalized_sections(const std::vector<Section>& sections, const LineParam& line) {
  std::vector<Section> out;
  for (const Section& s : sections) {
    Vec2 a = line_point_at(line, s.t());
    std::vector<Vec2> v;
    for (const Vec2& p : s.vertices()) v.push_back(p - a);
    out.emplace_back(s.t(), v);
  }
  return out;
}

namespace detail {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// Epigraph problem  min z  s.t.  |A_i x - s_i| <= z,  s_i in S_i,  with each
// s_i = p0_i + U_i phi_i and G_i phi_i <= h_i.
class ChebyshevBarrier {
 public:
  explicit ChebyshevBarrier(const std::vector<Section>& sections) {
    std::size_t off = 4;
    for (const Section& s : sections) {
      Block b;
      b.t = s.t();
      b.offset = off;
      const auto& v = s.vertices();
      if (s.kind() == Section::Kind::point) {
        b.k = 0;
        b.p0 = v[0];
      } else if (s.kind() == Section::Kind::segment) {
        b.k = 1;
        b.p0 = v[0];
        b.u1 = v[1] - v[0];
        b.g = {{-1, 0}, {1, 0}};
        b.h = {0, 1};
      } else {
        b.k = 2;
        for (std::size_t i = 0; i < v.size(); ++i) {
          const Vec2 e = v[(i + 1) % v.size()] - v[i];
          const double len = norm(e);
          b.g.push_back({e.y / len, -e.x / len});
          b.h.push_back((e.y * v[i].x - e.x * v[i].y) / len);
        }
      }
      off += b.k;
      nu_ += static_cast<double>(b.h.size()) + 2.0;
      blocks_.push_back(b);
    }
    zi_ = off;
    dim_ = off + 1;
  }

  std::size_t dim() const { return dim_; }
  double nu() const { return nu_; }
  std::size_t z_index() const { return zi_; }

  VecX start(const std::vector<Section>& sections) const {
    VecX v = VecX::Zero(static_cast<Eigen::Index>(dim_));
    // Least-squares line through the section centroids.
    double st = 0, stt = 0, sx = 0, sy = 0, stx = 0, sty = 0;
    const double n = static_cast<double>(sections.size());
    for (const Section& s : sections) {
      Vec2 c = s.centroid();
      st += s.t(); stt += s.t() * s.t();
      sx += c.x; sy += c.y; stx += s.t() * c.x; sty += s.t() * c.y;
    }
    const double den = n * stt - st * st;
    if (sections.size() >= 2 && den != 0) {
      v[0] = (n * stx - st * sx) / den;
      v[2] = (n * sty - st * sy) / den;
    }
    v[1] = (sx - v[0] * st) / n;
    v[3] = (sy - v[2] * st) / n;
    double z = 0;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      const Block& b = blocks_[i];
      if (b.k == 1) v[static_cast<Eigen::Index>(b.offset)] = 0.5;
      if (b.k == 2) {
        Vec2 c = sections[i].centroid();
        v[static_cast<Eigen::Index>(b.offset)] = c.x;
        v[static_cast<Eigen::Index>(b.offset + 1)] = c.y;
      }
      z = std::max(z, norm(residual(b, v)));
    }
    v[static_cast<Eigen::Index>(zi_)] = 1.5 * z + 1.0;
    return v;
  }

  bool inside(const VecX& v) const {
    const double z = v[static_cast<Eigen::Index>(zi_)];
    for (const Block& b : blocks_) {
      for (std::size_t r = 0; r < b.h.size(); ++r)
        if (!(b.h[r] - row_dot(b, r, v) > 0)) return false;
      if (!(z - norm(residual(b, v)) > 0)) return false;
    }
    return true;
  }

  double value(const VecX& v, double tau) const {
    const double z = v[static_cast<Eigen::Index>(zi_)];
    double f = tau * z;
    for (const Block& b : blocks_) {
      for (std::size_t r = 0; r < b.h.size(); ++r) f -= std::log(b.h[r] - row_dot(b, r, v));
      const double un = norm(residual(b, v));
      f -= std::log((z - un) * (z + un));
    }
    return f;
  }

  void derivatives(const VecX& v, double tau, VecX& grad, MatX& hess) const {
    const auto D = static_cast<Eigen::Index>(dim_);
    grad = VecX::Zero(D);
    hess = MatX::Zero(D, D);
    const auto zi = static_cast<Eigen::Index>(zi_);
    const double z = v[zi];
    grad[zi] = tau;
    for (const Block& b : blocks_) {
      // Linear rows on phi.
      for (std::size_t r = 0; r < b.h.size(); ++r) {
        const double s = b.h[r] - row_dot(b, r, v);
        VecX g = VecX::Zero(D);
        for (std::size_t j = 0; j < b.k; ++j) g[static_cast<Eigen::Index>(b.offset + j)] = b.g[r][j];
        grad += g / s;
        hess += g * g.transpose() / (s * s);
      }
      // Cone (u, z) with u = A x - p0 - U phi.
      Eigen::Matrix<double, 3, Eigen::Dynamic> W = Eigen::Matrix<double, 3, Eigen::Dynamic>::Zero(3, D);
      W(0, 0) = b.t; W(0, 1) = 1; W(1, 2) = b.t; W(1, 3) = 1;
      if (b.k == 1) {
        W(0, static_cast<Eigen::Index>(b.offset)) = -b.u1.x;
        W(1, static_cast<Eigen::Index>(b.offset)) = -b.u1.y;
      } else if (b.k == 2) {
        W(0, static_cast<Eigen::Index>(b.offset)) = -1;
        W(1, static_cast<Eigen::Index>(b.offset + 1)) = -1;
      }
      W(2, zi) = 1;
      Vec2 u = residual(b, v);
      const double un = norm(u);
      const double dd = (z - un) * (z + un);
      Eigen::Vector3d g(2 * u.x / dd, 2 * u.y / dd, -2 * z / dd);
      Eigen::Matrix3d H;
      H << 2 / dd + 4 * u.x * u.x / (dd * dd), 4 * u.x * u.y / (dd * dd), -4 * z * u.x / (dd * dd),
          4 * u.x * u.y / (dd * dd), 2 / dd + 4 * u.y * u.y / (dd * dd), -4 * z * u.y / (dd * dd),
          -4 * z * u.x / (dd * dd), -4 * z * u.y / (dd * dd), -2 / dd + 4 * z * z / (dd * dd);
      grad += W.transpose() * g;
      hess += W.transpose() * H * W;
    }
  }

  LineParam line(const VecX& v) const { return {v[0], v[1], v[2], v[3]}; }

 private:
  struct Block {
    double t = 0;
    std::size_t offset = 0, k = 0;
    Vec2 p0{}, u1{};
    std::vector<std::array<double, 2>> g;
    std::vector<double> h;
  };

  static double row_dot(const Block& b, std::size_t r, const VecX& v) {
    double s = 0;
    for (std::size_t j = 0; j < b.k; ++j) s += b.g[r][j] * v[static_cast<Eigen::Index>(b.offset + j)];
    return s;
  }

  static Vec2 residual(const Block& b, const VecX& v) {
    Vec2 a{v[0] * b.t + v[1], v[2] * b.t + v[3]};
    Vec2 s = b.p0;
    if (b.k == 1) s = s + v[static_cast<Eigen::Index>(b.offset)] * b.u1;
    if (b.k == 2) s = s + Vec2{v[static_cast<Eigen::Index>(b.offset)], v[static_cast<Eigen::Index>(b.offset + 1)]};
    return a - s;
  }

  std::vector<Block> blocks_;
  std::size_t dim_ = 0, zi_ = 0;
  double nu_ = 0;
};

// Newton on d_i(x) = z for all five sections. Only meaningful when every
// distance is active and positive at the optimum.
inline std::optional<LineParam> equioscillation_polish(const std::vector<Section>& sections, LineParam line) {
  Eigen::Matrix<double, 5, 1> v;
  std::vector<SectionDistance> ds = distances(sections, line);
  double z = 0;
  for (const auto& d : ds) z = std::max(z, d.dist);
  v << line.a, line.b, line.c, line.d, z;
  for (int it = 0; it < 30; ++it) {
    LineParam l{v[0], v[1], v[2], v[3]};
    ds = distances(sections, l);
    Eigen::Matrix<double, 5, 5> J;
    Eigen::Matrix<double, 5, 1> r;
    for (int i = 0; i < 5; ++i) {
      if (!(ds[i].dist > 0)) return std::nullopt;
      const Vec2 g = (ds[i].a - ds[i].s) / ds[i].dist;
      const double t = sections[i].t();
      J.row(i) << g.x * t, g.x, g.y * t, g.y, -1.0;
      r[i] = ds[i].dist - v[4];
    }
    if (r.cwiseAbs().maxCoeff() <= 1e-15 * (1 + std::fabs(v[4]))) break;
    Eigen::FullPivLU<Eigen::Matrix<double, 5, 5>> lu(J);
    if (!lu.isInvertible()) return std::nullopt;
    Eigen::Matrix<double, 5, 1> dv = lu.solve(-r);
    if (!dv.allFinite()) return std::nullopt;
    v += dv;
    if (dv.cwiseAbs().maxCoeff() <= 1e-16 * (1 + v.cwiseAbs().maxCoeff())) break;
  }
  return LineParam{v[0], v[1], v[2], v[3]};
}

}  // namespace detail

/// Minimax line for five sections. An exact LP decides the zero-value case;
/// otherwise a log-barrier interior point method on the epigraph problem
/// drives the duality gap below tol * (1 + value), and an equal-distance
/// Newton step refines optima where all five distances are active.
inline ChebyshevResult chebyshev_line(const std::vector<Section>& sections, double tol = 1e-10) {
  if (sections.size() != 5) throw ValidationError("the Chebyshev line is defined for five sections");
  TransversalReport tr = find_transversal(sections, true);
  ChebyshevResult res;
  if (tr.feasible) {
    res.line = *tr.witness;
    res.per_section = distances(sections, res.line);
    for (auto& d : res.per_section) {
      d.s = d.a;
      d.dist = 0;
    }
    return res;
  }

  detail::ChebyshevBarrier bar(sections);
  detail::VecX v = bar.start(sections);
  const double nu = bar.nu();
  double tau = 1.0;
  int steps = 0;
  constexpr int max_steps = 5000;
  for (;;) {
    // Centering.
    for (int it = 0;; ++it) {
      if (++steps > max_steps || it > 200) throw NoConvergence("barrier Newton iterations exhausted");
      detail::VecX g;
      detail::MatX H;
      bar.derivatives(v, tau, g, H);
      Eigen::LDLT<detail::MatX> ldlt(H);
      detail::VecX dv = -ldlt.solve(g);
      if (ldlt.info() != Eigen::Success || !dv.allFinite()) {
        dv = -H.fullPivLu().solve(g);
        if (!dv.allFinite()) throw NoConvergence("singular barrier Hessian");
      }
      const double dec = -g.dot(dv);
      if (dec < 1e-9) break;
      double step = 1.0;
      const double f0 = bar.value(v, tau);
      while (step > 1e-14 && (!bar.inside(v + step * dv) || bar.value(v + step * dv, tau) > f0 - 0.25 * step * dec))
        step *= 0.5;
      if (step <= 1e-14) break;
      // Below rounding of f the Armijo test no longer means progress.
      if (step * dv.norm() <= 1e-15 * (1.0 + v.norm())) break;
      v += step * dv;
    }
    const double z = v[static_cast<Eigen::Index>(bar.z_index())];
    if (nu / tau <= tol * (1.0 + z)) break;
    tau *= 10.0;
  }
  res.iterations = steps;
  res.line = bar.line(v);
  res.per_section = distances(sections, res.line);
  res.value = objective(sections, res.line);

  if (res.value > 0 && res.spread() <= 1e-3 * (1 + res.value)) {
    if (auto pl = detail::equioscillation_polish(sections, res.line)) {
      const double f = objective(sections, *pl);
      if (f <= res.value + 1e-12 * (1 + res.value)) {
        res.line = *pl;
        res.value = f;
        res.per_section = distances(sections, res.line);
        res.polished = true;
      }
    }
  }
  return res;
}

/// Half-planes anchored at the line's points with inward normals toward the
/// closest section points.
inline HalfPlaneConfig extract_halfplanes(const ChebyshevResult& res, const std::vector<Section>& sections) {
  if (res.per_section.size() != 5 || sections.size() != 5) throw ValidationError("need five sections");
  std::vector<HalfPlane> hp;
  for (std::size_t i = 0; i < 5; ++i) {
    const SectionDistance& d = res.per_section[i];
    if (!(d.dist > 0)) throw OnSection("line meets section " + std::to_string(i));
    hp.push_back({d.a, (d.s - d.a) / norm(d.s - d.a), sections[i].t()});
  }
  return HalfPlaneConfig(hp);
}

}  // namespace tlab
