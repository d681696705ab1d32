#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "hjsweep/analysis.hpp"
#include "hjsweep/lf.hpp"

using namespace hjsweep;

namespace {

Hamiltonian two_norm() {
  return Hamiltonian{[](const Vec3&, const Vec3& p) { return std::hypot(p[0], p[1]); }, {1.0, 1.0, 1.0}};
}

Field2 filled(const Grid2& g, double v) {
  Field2 f(g, FieldOrientation::MinInfInit);
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j) f(i, j) = v;
  return f;
}

}  // namespace

TEST(LfUpdate, FlatNeighboursGiveHalfSpacing) {
  const Grid2 g = square_grid(20);
  const Field2 f = filled(g, 0.0);
  const auto c = lf_update(f, 5, 5, two_norm(), 1.0, 1.0, 1.0);
  ASSERT_TRUE(c);
  EXPECT_NEAR(*c, g.dx() / 2, 1e-15);
}

TEST(LfUpdate, AsymmetricNeighbours) {
  const Grid2 g({0, 4, 0, 4}, 4, 4, 1);
  Field2 f = filled(g, 0.0);
  f(3, 2) = 1.0;
  const auto c = lf_update(f, 2, 2, two_norm(), 1.0, 1.0, 1.0);
  ASSERT_TRUE(c);
  EXPECT_NEAR(*c, 0.5, 1e-15);
}

TEST(LfUpdate, LinearSolutionIsAFixedPoint) {
  const Grid2 g = square_grid(10);
  Field2 f = filled(g, 0.0);
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j) f(i, j) = 0.6 * g.x(i) - 0.8 * g.y(j) + 2.0;
  const auto c = lf_update(f, 4, 7, two_norm(), 1.0, 1.0, 1.0);
  ASSERT_TRUE(c);
  EXPECT_NEAR(*c, f(4, 7), 1e-12);
}

TEST(LfUpdate, MonotoneWhenViscosityDominates) {
  const Grid2 g = square_grid(4);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int di[] = {1, -1, 0, 0}, dj[] = {0, 0, 1, -1};
  for (int n = 0; n < 10000; ++n) {
    Field2 f = filled(g, 0.0);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) f(i, j) = u(rng);
    const double r = u(rng);
    const auto before = lf_update(f, 2, 2, two_norm(), r, 1.0, 1.0);
    f(2 + di[n % 4], 2 + dj[n % 4]) += u(rng);
    const auto after = lf_update(f, 2, 2, two_norm(), r, 1.0, 1.0);
    ASSERT_TRUE(before && after);
    ASSERT_GE(*after, *before - 1e-12);
  }
}

TEST(LfUpdate, SentinelNeighbourAndRange) {
  const Grid2 g = square_grid(10);
  Field2 f = filled(g, 0.0);
  f(5, 6) = std::numeric_limits<double>::infinity();
  EXPECT_FALSE(lf_update(f, 5, 5, two_norm(), 1.0, 1.0, 1.0));
  EXPECT_THROW(lf_update(f, -1, 5, two_norm(), 1.0, 1.0, 1.0), std::out_of_range);
}

TEST(LfSolve, EikonalConvergesToFirstOrderAccuracy) {
  const Grid2 g = square_grid(40);
  const auto p = eikonal_problem(EikonalNorm::Two, g);
  const auto r = lf_solve(p, g);
  ASSERT_TRUE(r.converged);
  const auto e = error_norms(r.field, p.exact);
  EXPECT_LT(e.linf, 0.15);
  const Grid2 g2 = square_grid(80);
  const auto r2 = lf_solve(eikonal_problem(EikonalNorm::Two, g2), g2);
  EXPECT_LT(error_norms(r2.field, p.exact).linf, e.linf);
}

TEST(LfSolve, RequiresHamiltonianAndValidConfig) {
  const Grid2 g = square_grid(10);
  auto p = eikonal_problem(EikonalNorm::Two, g);
  LFConfig bad;
  bad.sigma = {-1.0, 0.0, 0.0};
  EXPECT_THROW(lf_solve(p, g, bad), std::invalid_argument);
  p.hamiltonian.reset();
  EXPECT_THROW(lf_solve(p, g), std::invalid_argument);
}

TEST(LfSolve, FrozenFrameKeepsInitialValue) {
  const Grid2 g = square_grid(10);
  LFConfig cfg;
  cfg.boundary = LFBoundary::Frozen;
  cfg.max_iters = 5;
  const auto r = lf_solve(eikonal_problem(EikonalNorm::Two, g), g, cfg);
  EXPECT_EQ(r.field(0, 3), cfg.init_value);
  EXPECT_EQ(r.field(10, 10), cfg.init_value);
}
