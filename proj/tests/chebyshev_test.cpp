#include <gtest/gtest.h>

#include <cmath>

#include "support/instances.hpp"

using namespace tlab;
using namespace tlab::testing;

namespace {

std::vector<Section> translated(const std::vector<Section>& secs, const LineParam& shift) {
  std::vector<Section> out;
  for (const Section& s : secs) {
    std::vector<Vec2> v;
    for (const Vec2& p : s.vertices()) v.push_back(p + line_point_at(shift, s.t()));
    out.emplace_back(s.t(), v);
  }
  return out;
}

}  // namespace

TEST(Chebyshev, HyperboloidHasValueZero) {
  const auto st = hyperboloid_sections({-2, -1, 0, 1, 2});
  const auto r = chebyshev_line(st.sections());
  EXPECT_EQ(r.value, 0);
  for (const Section& s : st.sections())
    EXPECT_EQ(dist_point_polygon(line_point_at(r.line, s.t()), s).distance, 0);
}

TEST(Chebyshev, AlternatingPointsEquioscillate) {
  const auto secs = alternating_points();
  const auto r = chebyshev_line(secs);
  EXPECT_NEAR(r.value, 1, 1e-6);
  EXPECT_LE(r.spread(), 1e-6);
  // Every optimum has slopes zero and intercepts within the band.
  EXPECT_NEAR(r.line.a, 0, 1e-5);
  EXPECT_NEAR(r.line.c, 0, 1e-5);
  // Grid oracle: nothing on a fine grid does better.
  EXPECT_GE(grid_minimum(secs, 9, 1), r.value - 1e-6);
}

TEST(Chebyshev, AlternatingPointsHalfPlanes) {
  const auto secs = alternating_points();
  const auto r = chebyshev_line(secs);
  const HalfPlaneConfig c = extract_halfplanes(r, secs);
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(c[i].normal.x, i % 2 == 0 ? 1 : -1, 1e-6);
    EXPECT_NEAR(c[i].normal.y, 0, 1e-5);
  }
  EXPECT_FALSE(c.generic());
}

TEST(Chebyshev, ObjectiveIsConvex) {
  Rng rng(17);
  const auto secs = random_family(3);
  for (int k = 0; k < 500; ++k) {
    const LineParam l1{rng.uniform(-2, 2), rng.uniform(-3, 3), rng.uniform(-2, 2), rng.uniform(-3, 3)};
    const LineParam l2{rng.uniform(-2, 2), rng.uniform(-3, 3), rng.uniform(-2, 2), rng.uniform(-3, 3)};
    const double lam = rng.uniform();
    const double mid = objective(secs, affine_combination(l1, l2, lam));
    EXPECT_LE(mid, lam * objective(secs, l1) + (1 - lam) * objective(secs, l2) + 1e-12);
  }
}

TEST(Chebyshev, TranslationEquivariance) {
  const auto insts = equioscillating_instances(3);
  const LineParam shift{0.25, -1.5, -0.125, 2};
  for (const auto& inst : insts) {
    const auto r = chebyshev_line(inst.sections);
    const auto s = chebyshev_line(translated(inst.sections, shift));
    EXPECT_NEAR(s.value, r.value, 1e-7 * (1 + r.value)) << inst.seed;
  }
}

// The solver value is bracketed by an exact LP lower bound on an outer
// polygonal approximation and by the value at its own line.
TEST(Chebyshev, MatchesOracleOnEquioscillatingInstances) {
  for (const auto& inst : equioscillating_instances(5)) {
    const auto r = chebyshev_line(inst.sections);
    EXPECT_GT(r.value, 0);
    EXPECT_NEAR(objective(inst.sections, r.line), r.value, 1e-12);
    EXPECT_FALSE(outer_offset_feasible(inst.sections, r.value * (1 - 1e-4))) << inst.seed;
    EXPECT_TRUE(outer_offset_feasible(inst.sections, r.value * (1 + 1e-6))) << inst.seed;
    EXPECT_GE(grid_minimum(inst.sections), r.value - 1e-9) << inst.seed;
    EXPECT_LE(r.spread(), 1e-6 * (1 + r.value));
  }
}

TEST(Chebyshev, HalfPlanesContainTheirSections) {
  for (const auto& inst : equioscillating_instances(5)) {
    const auto r = chebyshev_line(inst.sections);
    const HalfPlaneConfig c = extract_halfplanes(r, inst.sections);
    for (int i = 0; i < 5; ++i) {
      const Section& s = inst.sections[i];
      EXPECT_EQ(c[i].anchor, line_point_at(r.line, s.t()));
      for (const Vec2& v : s.vertices()) EXPECT_GE(dot(c[i].normal, v - c[i].anchor), -1e-9) << inst.seed;
    }
  }
}

TEST(Chebyshev, RejectsEmptyInput) { EXPECT_THROW(chebyshev_line({}), ValidationError); }
