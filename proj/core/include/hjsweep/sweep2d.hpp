#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "hjsweep/field.hpp"
#include "hjsweep/grid.hpp"
#include "hjsweep/problem.hpp"
#include "hjsweep/rotation.hpp"

namespace hjsweep {

struct BasicScheme {};

/// Axis-aligned rule plus every listed rotation in every sweep.
struct RotatedScheme {
  std::vector<RotationDir2> rotations;
};

/// Axis-aligned rule plus k rotations drawn from `pool` anew each iteration.
struct RotatedRandomScheme {
  std::vector<RotationDir2> pool;
  int k = 1;
  std::uint64_t seed = 0;
};

/// Third-order WENO derivatives, seeded by a converged basic solve.
struct WenoScheme {};

using Scheme = std::variant<BasicScheme, RotatedScheme, RotatedRandomScheme, WenoScheme>;

struct SolverConfig {
  double tol = 1e-8;
  int max_iters = 1000;
  Scheme scheme = BasicScheme{};
  double weno_eps = 1e-6;
  /// Starting value of every non-boundary node for min-type problems. Reads
  /// past the frame hit the +inf ghost layers and are skipped, but nodes
  /// start finite so stencils that need two unknown neighbours can
  /// activate. May be +inf.
  double init_value = 1e6;

  void validate() const;
};

template <class FieldT>
struct BasicSolveResult {
  FieldT field;
  /// Iterations that changed the field by more than tol. The final sweep
  /// that confirms convergence is not counted.
  int iterations = 0;
  /// L-infinity change of every iteration, confirming one included.
  std::vector<double> residuals;
  bool converged = false;
};

using SolveResult = BasicSolveResult<Field2>;

/// One upwind candidate at node (i, j) for control a, reading the
/// current field values. Empty when the control is degenerate at the node or
/// an upwind neighbour is not finite.
std::optional<double> basic_update(const Field2& field, const ControlProblem& problem, int i, int j,
                                   const Control& a);

/// Same as basic_update with derivatives taken along the rotated lattice
/// directions of `rot`. Requires a square grid with ghost >= max(ihat, jhat).
std::optional<double> rotated_update(const Field2& field, const ControlProblem& problem, int i, int j,
                                     const Control& a, const RotationDir2& rot);

struct WenoDerivatives {
  double px_plus, px_minus, py_plus, py_minus;
};

/// One-sided third-order WENO derivatives at (i, j). Reads past the frame are
/// taken in the limit of a very large ghost value: the smoothness weight of a
/// side reaching two nodes out becomes 0, a side with a ghost opposite becomes
/// purely one-sided, and a side whose first neighbour is a ghost is +-inf.
/// Empty when phi_ij itself is not finite. Requires ghost >= 2.
std::optional<WenoDerivatives> weno_derivatives(const Field2& field, int i, int j, double eps = 1e-6);

/// Basic update with neighbours replaced by phi_ij +- h * (WENO derivative);
/// falls back to basic_update where weno_derivatives is empty.
std::optional<double> weno_update(const Field2& field, const ControlProblem& problem, int i, int j,
                                  const Control& a, double eps = 1e-6);

/// Gauss-Seidel fast sweeping with four alternating orderings per iteration
/// over every grid node, frame included. Stops once an iteration changes no
/// node by more than tol; max_iters caps the number of iterations run,
/// confirming one included.
/// The grid is widened automatically when the scheme needs more ghost layers.
SolveResult sweep_solve(const ControlProblem& problem, const Grid2& grid, const SolverConfig& config = {});

/// Ghost width the scheme needs.
int required_ghost(const Scheme& scheme);

}  // namespace hjsweep
