#include "hjsweep/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hjsweep {

namespace {

constexpr double kTie = 1e-12;

double wrap_angle(double a, double lo, double period) {
  double r = std::fmod(a - lo, period);
  if (r < 0.0) r += period;
  return lo + r;
}

double angle_distance(double a, double b) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double d = std::fmod(std::abs(a - b), two_pi);
  return std::min(d, two_pi - d);
}

// Lattice cell and fraction along one axis, clamped so that the far node is
// still on the grid.
void locate(double p, double lo, double h, int cells, int& i0, double& frac) {
  const double s = (p - lo) / h;
  i0 = std::clamp(static_cast<int>(std::floor(s)), 0, cells - 1);
  frac = s - i0;
}

bool inside_sampling_region(const Grid3& g, const Vec3& p) {
  const bool xy = p[0] >= g.xmin() + g.dx() && p[0] <= g.xmax() - g.dx() && p[1] >= g.ymin() + g.dy() &&
                  p[1] <= g.ymax() - g.dy();
  if (g.periodic_z()) return xy;
  return xy && p[2] >= g.zmin() + g.dz() && p[2] <= g.zmax() - g.dz();
}

}  // namespace

const char* to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Reached:
      return "reached";
    case TrajectoryStatus::TimedOut:
      return "timed_out";
    case TrajectoryStatus::ExitedDomain:
      return "exited_domain";
  }
  return "unknown";
}

double interpolate(const Field3& field, const Vec3& point) {
  const Grid3& g = field.grid();
  Vec3 p = point;
  if (g.periodic_z()) p[2] = wrap_angle(p[2], g.zmin(), g.zmax() - g.zmin());
  if (!g.contains(p)) throw std::out_of_range("interpolate: point outside the grid");

  int i0, j0, k0;
  double fx, fy, fz;
  locate(p[0], g.xmin(), g.dx(), g.I(), i0, fx);
  locate(p[1], g.ymin(), g.dy(), g.J(), j0, fy);
  if (g.periodic_z()) {
    const double s = (p[2] - g.zmin()) / g.dz();
    k0 = static_cast<int>(std::floor(s));
    fz = s - k0;
  } else {
    locate(p[2], g.zmin(), g.dz(), g.K(), k0, fz);
  }

  double acc = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const double w = (a ? fx : 1.0 - fx) * (b ? fy : 1.0 - fy) * (c ? fz : 1.0 - fz);
        const double v = field(i0 + a, j0 + b, k0 + c);
        if (w == 0.0) continue;
        if (!std::isfinite(v)) throw std::domain_error("interpolate: non-finite field value near the point");
        acc += w * v;
      }
  return acc;
}

Vec3 sample_gradient(const Field3& field, const Vec3& point) {
  const Grid3& g = field.grid();
  if (!inside_sampling_region(g, point)) throw std::out_of_range("sample_gradient: point too close to the frame");
  const Vec3 h{g.dx(), g.dy(), g.dz()};
  Vec3 grad{};
  for (int l = 0; l < 3; ++l) {
    Vec3 hi = point, lo = point;
    hi[l] += h[l];
    lo[l] -= h[l];
    grad[l] = (interpolate(field, hi) - interpolate(field, lo)) / (2.0 * h[l]);
  }
  return grad;
}

CarControl car_controls(const Vec3& state, const Vec3& gradient, const CarParams& params) {
  const double c = std::cos(state[2]);
  const double s = std::sin(state[2]);
  const double sv = gradient[0] * c + gradient[1] * s;
  const double sw = params.d * (-gradient[0] * s + gradient[1] * c) + gradient[2];
  CarControl u{1.0, 0.0};
  if (std::abs(sv) > kTie) u.v = sv > 0.0 ? -1.0 : 1.0;
  if (std::abs(sw) > kTie) u.omega = sw > 0.0 ? -1.0 : 1.0;
  return u;
}

Trajectory extract_trajectory(const Field3& field, const Vec3& start, const CarParams& params, double dt,
                              double t_max) {
  const Grid3& g = field.grid();
  if (!g.contains(start)) throw std::invalid_argument("trajectory: start outside the domain");
  if (!(params.W > 0.0) || !(params.d >= 0.0)) throw std::invalid_argument("trajectory: invalid car parameters");
  if (dt <= 0.0) dt = g.dx() / 2.0;
  if (!(t_max >= 0.0)) throw std::invalid_argument("trajectory: t_max must be non-negative");

  const double rho = 2.0 * std::max(g.dx(), g.dy());
  const double rho_theta = 2.0 * g.dz();
  const double period = g.zmax() - g.zmin();
  auto normalise = [&](Vec3 s) {
    if (g.periodic_z()) s[2] = wrap_angle(s[2], g.zmin(), period);
    return s;
  };
  // the solve fixed phi = 0 at the node nearest the target, so aim there
  const Node3 tn = g.nearest_node(params.target);
  const Vec3 target = g.point(tn.i, tn.j, tn.k);
  auto arrived = [&](const Vec3& s) {
    return std::hypot(s[0] - target[0], s[1] - target[1]) <= rho && angle_distance(s[2], target[2]) <= rho_theta;
  };
  auto step = [&](const Vec3& s, const CarControl& u, double h) {
    const Vec3 f = car_dynamics(params, s[2], u.v, u.omega);
    return Vec3{s[0] + h * f[0], s[1] + h * f[1], s[2] + h * f[2]};
  };

  Trajectory out;
  out.dt = dt;
  Vec3 s = normalise(start);
  double t = 0.0;
  const auto max_steps = static_cast<long long>(std::ceil(t_max / dt - 1e-9));
  for (long long n = 0;; ++n) {
    if (arrived(s)) {
      out.samples.push_back({t, s[0], s[1], s[2], 1.0, 0.0});
      out.status = TrajectoryStatus::Reached;
      return out;
    }
    if (!inside_sampling_region(g, s)) {
      out.samples.push_back({t, s[0], s[1], s[2], 1.0, 0.0});
      out.status = TrajectoryStatus::ExitedDomain;
      return out;
    }
    const CarControl u = car_controls(s, sample_gradient(field, s), params);
    out.samples.push_back({t, s[0], s[1], s[2], u.v, u.omega});
    if (n >= max_steps) {
      out.status = TrajectoryStatus::TimedOut;
      return out;
    }
    const Vec3 mid = normalise(step(s, u, dt / 2.0));
    CarControl um = u;
    if (inside_sampling_region(g, mid)) um = car_controls(mid, sample_gradient(field, mid), params);
    s = normalise(step(s, um, dt));
    t = static_cast<double>(n + 1) * dt;
  }
}

}  // namespace hjsweep
