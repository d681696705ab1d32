#pragma once

#include <optional>

#include "hjsweep/field.hpp"
#include "hjsweep/problem.hpp"
#include "hjsweep/sweep2d.hpp"

namespace hjsweep {

/// How the computational frame is treated between sweeps.
enum class LFBoundary {
  /// phi_0 <- min(max(2 phi_1 - phi_2, phi_2), phi_0) after every sweep.
  Extrapolate,
  /// Frame nodes keep their initial value.
  Frozen,
};

struct LFConfig {
  /// Artificial viscosities; a zero component takes the problem's bound.
  Vec3 sigma{0.0, 0.0, 0.0};
  double tol = 1e-8;
  int max_iters = 10000;
  double init_value = 1e6;
  LFBoundary boundary = LFBoundary::Extrapolate;

  void validate() const;
};

/// Lax-Friedrichs candidate at interior node (i, j) for H(x, grad phi) = r.
/// Empty if a neighbour is not finite.
std::optional<double> lf_update(const Field2& field, int i, int j, const Hamiltonian& hamiltonian, double r,
                                double sigma_x, double sigma_y);

/// Gauss-Seidel Lax-Friedrichs sweeping with four orderings per iteration on
/// the interior nodes; the frame is handled per `config.boundary`. Needs
/// `problem.hamiltonian`.
SolveResult lf_solve(const ControlProblem& problem, const Grid2& grid, const LFConfig& config = {});

/// Three-dimensional variant with eight orderings. A periodic third axis is
/// swept in full and differenced across the seam.
BasicSolveResult<Field3> lf_solve3(const ControlProblem& problem, const Grid3& grid, const LFConfig& config = {});

}  // namespace hjsweep
