#include "hjsweep/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hjsweep {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<Control> sample_controls(const ControlSet::Variant& v) {
  return std::visit(
      [](const auto& set) -> std::vector<Control> {
        using T = std::decay_t<decltype(set)>;
        if constexpr (std::is_same_v<T, FiniteControls>) {
          if (set.values.empty()) throw std::invalid_argument("controls: finite set is empty");
          for (std::size_t a = 0; a < set.values.size(); ++a) {
            for (std::size_t b = a + 1; b < set.values.size(); ++b) {
              if (set.values[a] == set.values[b]) {
                throw std::invalid_argument("controls: finite set contains duplicates");
              }
            }
          }
          return set.values;
        } else if constexpr (std::is_same_v<T, SampledCircle>) {
          if (set.K < 4) throw std::invalid_argument("controls: sampled circle needs K >= 4");
          std::vector<Control> out;
          out.reserve(static_cast<std::size_t>(set.K));
          for (int k = 0; k < set.K; ++k) out.push_back({kTwoPi * k / set.K});
          return out;
        } else {
          if (set.Ka < 4 || set.Kb < 2) {
            throw std::invalid_argument("controls: sampled sphere needs Ka >= 4 and Kb >= 2");
          }
          std::vector<Control> out;
          const double half_pi = 0.5 * std::numbers::pi;
          out.push_back({0.0, -half_pi});
          for (int m = 1; m < set.Kb; ++m) {
            const double b = -half_pi + std::numbers::pi * m / set.Kb;
            for (int k = 0; k < set.Ka; ++k) out.push_back({kTwoPi * k / set.Ka, b});
          }
          out.push_back({0.0, half_pi});
          return out;
        }
      },
      v);
}

double dual_norm(EikonalNorm p, double x, double y, double z = 0.0) {
  switch (p) {
    case EikonalNorm::One:  // dual of the 1-norm is the max-norm
      return std::max({std::abs(x), std::abs(y), std::abs(z)});
    case EikonalNorm::Two:
      return std::sqrt(x * x + y * y + z * z);
    case EikonalNorm::Inf:
      return std::abs(x) + std::abs(y) + std::abs(z);
  }
  return 0.0;
}

double primal_norm(EikonalNorm p, const Vec3& g) {
  switch (p) {
    case EikonalNorm::One:
      return std::abs(g[0]) + std::abs(g[1]) + std::abs(g[2]);
    case EikonalNorm::Two:
      return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    case EikonalNorm::Inf:
      return std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
  }
  return 0.0;
}

// Extreme points of the dual unit ball: the controls that attain the infimum.
std::vector<Control> norm_controls(EikonalNorm p, int dim) {
  std::vector<Control> out;
  if (p == EikonalNorm::One) {
    const int n = 1 << dim;
    for (int mask = 0; mask < n; ++mask) {
      Control a(static_cast<std::size_t>(dim));
      for (int c = 0; c < dim; ++c) a[static_cast<std::size_t>(c)] = (mask >> c & 1) ? -1.0 : 1.0;
      out.push_back(std::move(a));
    }
  } else {
    for (int c = 0; c < dim; ++c) {
      for (double s : {1.0, -1.0}) {
        Control a(static_cast<std::size_t>(dim), 0.0);
        a[static_cast<std::size_t>(c)] = s;
        out.push_back(std::move(a));
      }
    }
  }
  return out;
}

}  // namespace

ControlSet::ControlSet(Variant v) : variant_(std::move(v)), samples_(sample_controls(variant_)) {}

void ControlProblem::validate() const {
  if (dim != 2 && dim != 3) throw std::invalid_argument("problem: dim must be 2 or 3");
  if (!dynamics) throw std::invalid_argument("problem: dynamics not set");
  if (!running_cost) throw std::invalid_argument("problem: running cost not set");
  if (boundary.empty()) throw std::invalid_argument("problem: boundary set is empty");
  if (orientation == Orientation::Min && floor) {
    throw std::invalid_argument("problem: a floor is only meaningful for max-type problems");
  }
}

EikonalNorm parse_norm(const std::string& s) {
  if (s == "1") return EikonalNorm::One;
  if (s == "2") return EikonalNorm::Two;
  if (s == "inf" || s == "Inf" || s == "infinity") return EikonalNorm::Inf;
  throw std::invalid_argument("unknown norm '" + s + "' (expected 1, 2 or inf)");
}

std::string to_string(EikonalNorm p) {
  switch (p) {
    case EikonalNorm::One:
      return "1";
    case EikonalNorm::Two:
      return "2";
    case EikonalNorm::Inf:
      return "inf";
  }
  return "?";
}

ControlProblem eikonal_problem(EikonalNorm p, std::function<double(const Vec3&)> speed,
                               const Grid2& grid, Vec3 source, int K) {
  if (!grid.contains(source)) throw std::invalid_argument("eikonal: source outside the domain");
  for (int i = 0; i <= grid.I(); ++i) {
    for (int j = 0; j <= grid.J(); ++j) {
      const double v = speed(grid.point(i, j));
      if (!(v > 0.0)) throw std::invalid_argument("eikonal: speed must be positive everywhere");
    }
  }

  ControlProblem prob;
  prob.dim = 2;
  prob.name = "eikonal-p" + to_string(p);
  if (p == EikonalNorm::Two) {
    prob.controls = ControlSet(SampledCircle{K});
    prob.dynamics = [](const Vec3&, const Control& a) -> Vec3 {
      return {std::cos(a[0]), std::sin(a[0]), 0.0};
    };
  } else {
    prob.controls = ControlSet(FiniteControls{norm_controls(p, 2)});
    prob.dynamics = [](const Vec3&, const Control& a) -> Vec3 { return {a[0], a[1], 0.0}; };
  }
  prob.dependence = DynamicsDependence::Uniform;
  prob.running_cost = [speed](const Vec3& x) { return 1.0 / speed(x); };
  const Node2 n = grid.nearest_node(source);
  prob.boundary.push_back({grid.point(n.i, n.j), 0.0});
  prob.hamiltonian = Hamiltonian{[p](const Vec3&, const Vec3& g) { return primal_norm(p, g); },
                                 {1.0, 1.0, 1.0}};
  return prob;
}

ControlProblem eikonal_problem(EikonalNorm p, const Grid2& grid, Vec3 source, int K) {
  auto prob = eikonal_problem(p, [](const Vec3&) { return 1.0; }, grid, source, K);
  prob.exact = [p, source](const Vec3& x) { return dual_norm(p, x[0] - source[0], x[1] - source[1]); };
  return prob;
}

ControlProblem smooth_eikonal_problem(const Grid2& grid, Vec3 source, int K) {
  if (source[0] != 0.0 || source[1] != 0.0) {
    throw std::invalid_argument("smooth eikonal: the source must be the origin");
  }
  if (!grid.contains(source)) throw std::invalid_argument("smooth eikonal: origin outside the domain");
  ControlProblem prob;
  prob.dim = 2;
  prob.name = "smooth-eikonal";
  prob.controls = ControlSet(SampledCircle{K});
  prob.dynamics = [](const Vec3&, const Control& a) -> Vec3 {
    return {std::cos(a[0]), std::sin(a[0]), 0.0};
  };
  prob.dependence = DynamicsDependence::Uniform;
  prob.running_cost = [](const Vec3& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1]); };
  const Node2 n = grid.nearest_node(source);
  prob.boundary.push_back({grid.point(n.i, n.j), 0.0});
  prob.exact = [](const Vec3& x) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); };
  prob.hamiltonian = Hamiltonian{
      [](const Vec3&, const Vec3& g) { return std::sqrt(g[0] * g[0] + g[1] * g[1]); }, {1.0, 1.0, 1.0}};
  return prob;
}

ControlProblem eikonal3_problem(EikonalNorm p, const Grid3& grid, Vec3 source, SampledSphere sphere) {
  if (!grid.contains(source)) throw std::invalid_argument("eikonal3: source outside the domain");
  ControlProblem prob;
  prob.dim = 3;
  prob.name = "eikonal3-p" + to_string(p);
  if (p == EikonalNorm::Two) {
    prob.controls = ControlSet(sphere);
    prob.dynamics = [](const Vec3&, const Control& a) -> Vec3 {
      const double cb = std::cos(a[1]);
      return {std::cos(a[0]) * cb, std::sin(a[0]) * cb, std::sin(a[1])};
    };
  } else {
    prob.controls = ControlSet(FiniteControls{norm_controls(p, 3)});
    prob.dynamics = [](const Vec3&, const Control& a) -> Vec3 { return {a[0], a[1], a[2]}; };
  }
  prob.dependence = DynamicsDependence::Uniform;
  prob.running_cost = [](const Vec3&) { return 1.0; };
  const Node3 n = grid.nearest_node(source);
  prob.boundary.push_back({grid.point(n.i, n.j, n.k), 0.0});
  prob.exact = [p, source](const Vec3& x) {
    return dual_norm(p, x[0] - source[0], x[1] - source[1], x[2] - source[2]);
  };
  prob.hamiltonian = Hamiltonian{[p](const Vec3&, const Vec3& g) { return primal_norm(p, g); },
                                 {1.0, 1.0, 1.0}};
  return prob;
}

ControlProblem visibility_problem(std::function<double(const Vec3&)> g_sdf, Vec3 vantage,
                                  const Grid2& grid) {
  const double ex = 1e-12 * (grid.xmax() - grid.xmin());
  const double ey = 1e-12 * (grid.ymax() - grid.ymin());
  if (!(vantage[0] > grid.xmin() + ex && vantage[0] < grid.xmax() - ex &&
        vantage[1] > grid.ymin() + ey && vantage[1] < grid.ymax() - ey)) {
    throw std::invalid_argument("visibility: vantage point must lie strictly inside the domain");
  }
  const double g_star = g_sdf(vantage);
  if (g_star > 0.0) throw std::invalid_argument("visibility: vantage point lies inside an obstacle");

  ControlProblem prob;
  prob.dim = 2;
  prob.name = "visibility";
  prob.controls = ControlSet(FiniteControls{{{0.0}}});
  // Characteristics run straight out of the vantage point; upwind is toward it.
  prob.dynamics = [vantage](const Vec3& x, const Control&) -> Vec3 {
    return {vantage[0] - x[0], vantage[1] - x[1], 0.0};
  };
  prob.dependence = DynamicsDependence::Full;
  prob.running_cost = [](const Vec3&) { return 0.0; };
  const Node2 n = grid.nearest_node(vantage);
  prob.boundary.push_back({grid.point(n.i, n.j), g_star});
  prob.orientation = Orientation::Max;
  prob.floor = std::move(g_sdf);
  return prob;
}

Vec3 car_dynamics(const CarParams& params, double theta, double v, double omega) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double wd = omega * params.W * params.d;
  return {v * c - wd * s, v * s + wd * c, params.W * omega};
}

ControlProblem car_problem(const CarParams& params, const Grid3& grid) {
  if (!(params.W > 0.0)) throw std::invalid_argument("car: W must be positive");
  if (!(params.d >= 0.0)) throw std::invalid_argument("car: d must be non-negative");
  if (!grid.periodic_z()) throw std::invalid_argument("car: the theta axis must be periodic");
  if (!grid.contains(params.target)) throw std::invalid_argument("car: target outside the domain");

  ControlProblem prob;
  prob.dim = 3;
  prob.name = "car";
  std::vector<Control> controls;
  for (double v : {-1.0, 1.0})
    for (double w : {-1.0, 0.0, 1.0}) controls.push_back({v, w});
  prob.controls = ControlSet(FiniteControls{std::move(controls)});
  prob.dynamics = [params](const Vec3& x, const Control& a) { return car_dynamics(params, x[2], a[0], a[1]); };
  prob.dependence = DynamicsDependence::ThirdAxisOnly;
  prob.running_cost = [](const Vec3&) { return 1.0; };
  const Node3 n = grid.nearest_node(params.target);
  prob.boundary.push_back({grid.point(n.i, n.j, n.k), 0.0});
  const double W = params.W;
  const double d = params.d;
  prob.hamiltonian = Hamiltonian{
      [W, d](const Vec3& x, const Vec3& g) {
        const double c = std::cos(x[2]);
        const double s = std::sin(x[2]);
        return std::abs(g[0] * c + g[1] * s) + W * std::abs(d * (-g[0] * s + g[1] * c) + g[2]);
      },
      {1.0 + W * d, 1.0 + W * d, W}};
  return prob;
}

std::pair<double, double> rotate_coefficients(double f1, double f2, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  return {c * f1 + s * f2, c * f2 - s * f1};
}

std::function<double(const Vec3&)> disks_sdf(std::vector<Disk> disks) {
  return [disks = std::move(disks)](const Vec3& x) {
    double g = -std::numeric_limits<double>::infinity();
    for (const auto& dk : disks) g = std::max(g, dk.radius - std::hypot(x[0] - dk.cx, x[1] - dk.cy));
    return g;
  };
}

}  // namespace hjsweep
