#include <cmath>

#include <benchmark/benchmark.h>

#include "hjsweep/analysis.hpp"
#include "hjsweep/lf.hpp"
#include "hjsweep/sweep2d.hpp"
#include "hjsweep/sweep3d.hpp"

using namespace hjsweep;

namespace {

Field2 ramp(const Grid2& g) {
  Field2 f(g, FieldOrientation::MinInfInit);
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j) f(i, j) = std::hypot(g.x(i), g.y(j));
  return f;
}

void BM_BasicUpdate(benchmark::State& state) {
  const Grid2 g = square_grid(64);
  const auto p = eikonal_problem(EikonalNorm::Two, g, {0, 0, 0}, 64);
  const Field2 f = ramp(g);
  const Control a{0.3};
  for (auto _ : state) benchmark::DoNotOptimize(basic_update(f, p, 40, 21, a));
}
BENCHMARK(BM_BasicUpdate);

void BM_RotatedUpdate(benchmark::State& state) {
  const Grid2 g = square_grid(64, 1.0, 2);
  const auto p = eikonal_problem(EikonalNorm::Two, g, {0, 0, 0}, 64);
  const Field2 f = ramp(g);
  const RotationDir2 rot = make_rotation2(2, 1, g.dx(), g.dy());
  const Control a{0.3};
  for (auto _ : state) benchmark::DoNotOptimize(rotated_update(f, p, 40, 21, a, rot));
}
BENCHMARK(BM_RotatedUpdate);

void BM_WenoUpdate(benchmark::State& state) {
  const Grid2 g = square_grid(64, 1.0, 2);
  const auto p = eikonal_problem(EikonalNorm::Two, g, {0, 0, 0}, 64);
  const Field2 f = ramp(g);
  const Control a{0.3};
  for (auto _ : state) benchmark::DoNotOptimize(weno_update(f, p, 40, 21, a));
}
BENCHMARK(BM_WenoUpdate);

void BM_SolveOneNormBasic(benchmark::State& state) {
  const Grid2 g = square_grid(static_cast<int>(state.range(0)));
  const auto p = eikonal_problem(EikonalNorm::One, g);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_solve(p, g).iterations);
}
BENCHMARK(BM_SolveOneNormBasic)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveTwoNormRotated(benchmark::State& state) {
  const Grid2 g = square_grid(static_cast<int>(state.range(0)));
  const auto p = eikonal_problem(EikonalNorm::Two, g, {0, 0, 0}, 400);
  SolverConfig cfg;
  cfg.scheme = RotatedScheme{{make_rotation2(1, 1, g.dx(), g.dy())}};
  for (auto _ : state) benchmark::DoNotOptimize(sweep_solve(p, g, cfg).iterations);
}
BENCHMARK(BM_SolveTwoNormRotated)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SolveLaxFriedrichs(benchmark::State& state) {
  const Grid2 g = square_grid(static_cast<int>(state.range(0)));
  const auto p = eikonal_problem(EikonalNorm::Two, g);
  for (auto _ : state) benchmark::DoNotOptimize(lf_solve(p, g).iterations);
}
BENCHMARK(BM_SolveLaxFriedrichs)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Solve3AllCorners(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Grid3 g({-1, 1, -1, 1, -1, 1}, n, n, n, 1);
  const auto p = eikonal3_problem(EikonalNorm::One, g);
  SolverConfig3 cfg;
  cfg.rotations = edge_rotations(g);
  for (auto& r : corner_rotations(g)) cfg.rotations.push_back(r);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_solve3(p, g, cfg).iterations);
}
BENCHMARK(BM_Solve3AllCorners)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
