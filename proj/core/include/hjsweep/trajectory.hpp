#pragma once

#include <vector>

#include "hjsweep/field.hpp"
#include "hjsweep/problem.hpp"

namespace hjsweep {

struct TrajectorySample {
  double t, x, y, theta, v, omega;
};

enum class TrajectoryStatus { Reached, TimedOut, ExitedDomain };

struct Trajectory {
  /// Each sample holds the state at time t and the control applied from t on.
  std::vector<TrajectorySample> samples;
  double dt = 0.0;
  TrajectoryStatus status = TrajectoryStatus::TimedOut;

  bool reached() const { return status == TrajectoryStatus::Reached; }
  double arrival_time() const { return samples.empty() ? 0.0 : samples.back().t; }
};

const char* to_string(TrajectoryStatus s);

/// Trilinear interpolation of a 3D field; the third axis wraps when periodic.
/// Throws std::out_of_range outside the grid and std::domain_error when a
/// contributing node is not finite.
double interpolate(const Field3& field, const Vec3& point);

/// Central differences of the interpolated field at steps (dx, dy, dz).
/// The point must lie at least one cell inside the x and y frame (and the z
/// frame on a non-periodic axis).
Vec3 sample_gradient(const Field3& field, const Vec3& point);

struct CarControl {
  double v;
  double omega;
};

/// Optimal feedback: v = -sign(phi_x cos t + phi_y sin t),
/// omega = -sign(-d phi_x sin t + d phi_y cos t + phi_t). Switching values
/// within 1e-12 of zero give v = +1 and omega = 0.
CarControl car_controls(const Vec3& state, const Vec3& gradient, const CarParams& params);

/// Integrates the car kinematics under the feedback controls with explicit
/// midpoint steps until the state is within 2 max(dx, dy) of the target node
/// position and 2 dz of its heading, until t_max, or until the state leaves
/// the region where the gradient can be sampled. dt <= 0 selects dx / 2.
Trajectory extract_trajectory(const Field3& field, const Vec3& start, const CarParams& params, double dt = 0.0,
                              double t_max = 20.0);

}  // namespace hjsweep
