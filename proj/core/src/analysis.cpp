#include "hjsweep/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace hjsweep {

double exact_eikonal(EikonalNorm p, const Vec3& x) {
  switch (p) {
    case EikonalNorm::One:
      return std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2])});
    case EikonalNorm::Two:
      return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    case EikonalNorm::Inf:
      return std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]);
  }
  throw std::invalid_argument("exact_eikonal: unknown norm");
}

namespace {

double edge_weight(int i, int n) { return (i == 0 || i == n) ? 0.5 : 1.0; }

void accumulate(ErrorNorms& e, double value, double exact, double w) {
  if (!std::isfinite(value)) throw std::invalid_argument("error_norms: field holds a non-finite node");
  const double d = std::abs(value - exact);
  e.linf = std::max(e.linf, d);
  e.l1 += w * d;
}

}  // namespace

ErrorNorms error_norms(const Field2& field, const std::function<double(const Vec3&)>& exact) {
  if (!exact) throw std::invalid_argument("error_norms: no exact solution");
  const Grid2& g = field.grid();
  ErrorNorms e;
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j)
      accumulate(e, field(i, j), exact(g.point(i, j)), edge_weight(i, g.I()) * edge_weight(j, g.J()));
  e.l1 *= g.dx() * g.dy();
  return e;
}

ErrorNorms error_norms(const Field3& field, const std::function<double(const Vec3&)>& exact) {
  if (!exact) throw std::invalid_argument("error_norms: no exact solution");
  const Grid3& g = field.grid();
  ErrorNorms e;
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j)
      for (int k = 0; k < g.nodes_z(); ++k) {
        const double wk = g.periodic_z() ? 1.0 : edge_weight(k, g.K());
        accumulate(e, field(i, j, k), exact(g.point(i, j, k)), edge_weight(i, g.I()) * edge_weight(j, g.J()) * wk);
      }
  e.l1 *= g.dx() * g.dy() * g.dz();
  return e;
}

Grid2 square_grid(int N, double half_width, int ghost) {
  return Grid2({-half_width, half_width, -half_width, half_width}, N, N, ghost);
}

RunOutcome evaluate(const SolveResult& result, const ControlProblem& problem) {
  return {error_norms(result.field, problem.exact), result.iterations, result.converged};
}

double observed_order(double prev, double cur, int n_prev, int n) {
  if (!(prev > 0.0) || !(cur > 0.0) || n_prev <= 0 || n <= n_prev) return std::numeric_limits<double>::quiet_NaN();
  return std::log(prev / cur) / std::log(static_cast<double>(n) / n_prev);
}

int thread_limit() {
  const char* s = std::getenv("HJSWEEP_THREADS");
  if (!s) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min<long>(v, 256));
}

ConvergenceTable convergence_table(const std::function<RunOutcome(int)>& run, const std::vector<int>& resolutions,
                                   int threads) {
  if (resolutions.empty()) throw std::invalid_argument("convergence_table: no resolutions");
  for (std::size_t q = 1; q < resolutions.size(); ++q)
    if (resolutions[q] <= resolutions[q - 1])
      throw std::invalid_argument("convergence_table: resolutions must be strictly increasing");
  if (threads <= 0) threads = thread_limit();

  ConvergenceTable table;
  table.rows.resize(resolutions.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (std::size_t q = next++; q < resolutions.size(); q = next++) {
      try {
        const auto t0 = std::chrono::steady_clock::now();
        const RunOutcome o = run(resolutions[q]);
        ConvergenceRow& row = table.rows[q];
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.resolution = resolutions[q];
        row.linf = o.errors.linf;
        row.l1 = o.errors.l1;
        row.iterations = o.iterations;
        row.converged = o.converged;
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const auto n = std::min<std::size_t>(static_cast<std::size_t>(threads), resolutions.size());
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t q = 0; q < table.rows.size(); ++q) {
    auto& row = table.rows[q];
    if (q == 0) {
      row.linf_order = row.l1_order = nan;
      continue;
    }
    const auto& prev = table.rows[q - 1];
    row.linf_order = observed_order(prev.linf, row.linf, prev.resolution, row.resolution);
    row.l1_order = observed_order(prev.l1, row.l1, prev.resolution, row.resolution);
  }
  return table;
}

}  // namespace hjsweep
