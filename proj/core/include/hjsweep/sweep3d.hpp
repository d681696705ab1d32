#pragma once

#include <optional>
#include <vector>

#include "hjsweep/field.hpp"
#include "hjsweep/grid.hpp"
#include "hjsweep/problem.hpp"
#include "hjsweep/rotation.hpp"
#include "hjsweep/sweep2d.hpp"

namespace hjsweep {

struct SolverConfig3 {
  double tol = 1e-8;
  int max_iters = 1000;
  /// Rotated rules used alongside the axis-aligned one in every sweep.
  std::vector<RotationDir3> rotations;
  /// See SolverConfig::init_value.
  double init_value = 1e6;

  void validate() const;
};

using SolveResult3 = BasicSolveResult<Field3>;

/// Axis-aligned upwind candidate at node (i, j, k); k wraps on a periodic axis.
std::optional<double> basic_update3(const Field3& field, const ControlProblem& problem, int i, int j, int k,
                                    const Control& a);

/// Candidate along the three lattice directions of `rot`. The rotation's
/// spacings are recomputed for the field's grid.
std::optional<double> rotated_update3(const Field3& field, const ControlProblem& problem, int i, int j, int k,
                                      const Control& a, const RotationDir3& rot);

/// Gauss-Seidel sweeping with eight orderings per iteration over every node.
/// The grid is widened automatically when a rotation needs more ghost layers.
SolveResult3 sweep_solve3(const ControlProblem& problem, const Grid3& grid, const SolverConfig3& config = {});

}  // namespace hjsweep
