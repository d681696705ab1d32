#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hjsweep/field.hpp"
#include "hjsweep/problem.hpp"
#include "hjsweep/sweep2d.hpp"

namespace hjsweep {

/// ||point||_{p'} with 1/p + 1/p' = 1: the solution of ||grad phi||_p = 1
/// with phi(0) = 0.
double exact_eikonal(EikonalNorm p, const Vec3& point);

struct ErrorNorms {
  double linf = 0.0;
  /// Trapezoidal rule: frame nodes weigh 1/2, corners 1/4 (1/8 in 3D).
  double l1 = 0.0;
};

/// Errors against `exact` over every lattice node, frame included, ghost
/// layers excluded. A periodic third axis is integrated over its K distinct
/// nodes with unit weights. Throws std::invalid_argument on a non-finite node.
ErrorNorms error_norms(const Field2& field, const std::function<double(const Vec3&)>& exact);
ErrorNorms error_norms(const Field3& field, const std::function<double(const Vec3&)>& exact);

/// [-h, h]^2 with N x N cells.
Grid2 square_grid(int N, double half_width = 1.0, int ghost = 1);

struct RunOutcome {
  ErrorNorms errors;
  int iterations = 0;
  bool converged = false;
};

/// Solve outcome measured against problem.exact.
RunOutcome evaluate(const SolveResult& result, const ControlProblem& problem);

struct ConvergenceRow {
  int resolution = 0;
  double linf = 0.0;
  /// log(e_prev / e) / log(N / N_prev); NaN on the first row or a zero error.
  double linf_order = 0.0;
  double l1 = 0.0;
  double l1_order = 0.0;
  int iterations = 0;
  bool converged = false;
  double seconds = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
};

/// log(prev / cur) / log(n / n_prev); NaN when either error is not positive.
double observed_order(double prev, double cur, int n_prev, int n);

/// Runs `run(N)` once per resolution and fills the order columns. Rows run
/// on up to `threads` threads; threads <= 0 reads HJSWEEP_THREADS (default 1).
/// Resolutions must be strictly increasing.
ConvergenceTable convergence_table(const std::function<RunOutcome(int)>& run, const std::vector<int>& resolutions,
                                   int threads = 0);

/// Thread cap from HJSWEEP_THREADS; 1 when unset or invalid.
int thread_limit();

}  // namespace hjsweep
