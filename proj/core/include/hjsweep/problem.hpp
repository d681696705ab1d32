#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hjsweep/grid.hpp"

namespace hjsweep {

/// A control value a in R^m.
using Control = std::vector<double>;

struct FiniteControls {
  std::vector<Control> values;
};

/// Angles a_k = 2*pi*k/K, k = 0..K-1, each stored as the one-element control {a_k}.
struct SampledCircle {
  int K = 400;
};

/// Planar angle a in [0, 2pi) (Ka samples) and inclination b in [-pi/2, pi/2]
/// (Kb + 1 samples, poles counted once). Controls are stored as {a, b}.
struct SampledSphere {
  int Ka = 64;
  int Kb = 32;
};

class ControlSet {
 public:
  using Variant = std::variant<FiniteControls, SampledCircle, SampledSphere>;

  explicit ControlSet(Variant v);

  const Variant& variant() const { return variant_; }
  /// The finite list of controls the solvers minimise over.
  const std::vector<Control>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

 private:
  Variant variant_;
  std::vector<Control> samples_;
};

enum class Orientation { Min, Max };

/// Which coordinates f(x, a) actually reads. Solvers cache stencils
/// accordingly: once per control, once per z-slab, or per node.
enum class DynamicsDependence { Uniform, ThirdAxisOnly, Full };

struct BoundaryPoint {
  Vec3 point{};
  double value = 0.0;
};

/// H(x, grad phi) for Lax-Friedrichs sweeping of H = r, together with bounds
/// sigma_l >= |dH/dp_l|.
struct Hamiltonian {
  std::function<double(const Vec3& x, const Vec3& p)> H;
  Vec3 sigma{1.0, 1.0, 1.0};
};

/// Steady control-form equation  -r(x) = inf_a <f(x, a), grad phi(x)>
/// (sup and max-type update for Orientation::Max) with phi = g on a set of points.
struct ControlProblem {
  int dim = 2;
  ControlSet controls{FiniteControls{{{0.0}}}};
  std::function<Vec3(const Vec3& x, const Control& a)> dynamics;
  DynamicsDependence dependence = DynamicsDependence::Full;
  std::function<double(const Vec3& x)> running_cost;
  std::vector<BoundaryPoint> boundary;
  Orientation orientation = Orientation::Min;
  /// Known solution for error analysis, if any.
  std::function<double(const Vec3& x)> exact;
  /// Max-type problems only: pointwise floor g(x) applied at every update.
  std::function<double(const Vec3& x)> floor;
  std::optional<Hamiltonian> hamiltonian;
  std::string name;

  /// Throws std::invalid_argument on a malformed problem.
  void validate() const;
};

enum class EikonalNorm { One, Two, Inf };

EikonalNorm parse_norm(const std::string& s);
std::string to_string(EikonalNorm p);

/// ||grad phi||_p = 1/v in 2D with phi(source) = 0.
ControlProblem eikonal_problem(EikonalNorm p, std::function<double(const Vec3&)> speed,
                               const Grid2& grid, Vec3 source, int K = 400);

/// Unit-speed convenience overload.
ControlProblem eikonal_problem(EikonalNorm p, const Grid2& grid, Vec3 source = {0, 0, 0}, int K = 400);

/// ||grad phi||_2 = sqrt(x^2 + y^2), phi(0) = 0; exact (x^2 + y^2)/2.
ControlProblem smooth_eikonal_problem(const Grid2& grid, Vec3 source = {0, 0, 0}, int K = 400);

/// ||grad phi||_p = 1 in 3D with phi(source) = 0.
ControlProblem eikonal3_problem(EikonalNorm p, const Grid3& grid, Vec3 source = {0, 0, 0},
                                SampledSphere sphere = {});

/// Visibility from `vantage` around obstacles given by a signed distance g
/// (positive inside obstacles). The visible set is {phi <= 0}.
ControlProblem visibility_problem(std::function<double(const Vec3&)> g_sdf, Vec3 vantage,
                                  const Grid2& grid);

struct CarParams {
  double W = 1.0;  ///< maximal angular velocity
  double d = 0.1;  ///< distance from the driving axle to the centre of mass
  Vec3 target{0.5, 0.5, 0.0};
};

/// Car kinematics
///   x' = v cos(t) - w W d sin(t),  y' = v sin(t) + w W d cos(t),  t' = W w
/// with v in {-1, 1}, w in {-1, 0, 1}; phi is the minimal travel time.
Vec3 car_dynamics(const CarParams& params, double theta, double v, double omega);

/// Minimal-time problem for the car. Controls are stored as {v, omega}.
ControlProblem car_problem(const CarParams& params, const Grid3& grid);

/// (f1, f2) expressed in axes rotated counter-clockwise by beta:
///   f1' = cos(b) f1 + sin(b) f2,  f2' = cos(b) f2 - sin(b) f1.
std::pair<double, double> rotate_coefficients(double f1, double f2, double beta);

/// Signed distance to a union of disks, positive inside.
struct Disk {
  double cx, cy, radius;
};
std::function<double(const Vec3&)> disks_sdf(std::vector<Disk> disks);

}  // namespace hjsweep
