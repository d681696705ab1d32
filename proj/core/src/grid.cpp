#include "hjsweep/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hjsweep {
namespace {

void check_axis(const char* name, double lo, double hi, int cells) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument(std::string("grid: non-positive extent on axis ") + name);
  }
  if (cells < 2) {
    throw std::invalid_argument(std::string("grid: need at least 2 cells on axis ") + name +
                                ", got " + std::to_string(cells));
  }
}

int nearest_index(double v, double lo, double h, int hi_index) {
  const long r = std::lround((v - lo) / h);
  return static_cast<int>(std::clamp<long>(r, 0, hi_index));
}

}  // namespace

bool approx_equal_spacing(double a, double b, double rel_tol) {
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

Grid2::Grid2(Bounds2 bounds, int I, int J, int ghost) : bounds_(bounds), I_(I), J_(J), ghost_(ghost) {
  check_axis("x", bounds.xmin, bounds.xmax, I);
  check_axis("y", bounds.ymin, bounds.ymax, J);
  if (ghost < 1) throw std::invalid_argument("grid: ghost width must be >= 1");
  dx_ = (bounds.xmax - bounds.xmin) / I;
  dy_ = (bounds.ymax - bounds.ymin) / J;
  nx_ = I + 1 + 2 * ghost;
  ny_ = J + 1 + 2 * ghost;
}

bool Grid2::is_square(double rel_tol) const { return approx_equal_spacing(dx_, dy_, rel_tol); }

bool Grid2::contains(const Vec3& p) const {
  const double ex = 1e-12 * (bounds_.xmax - bounds_.xmin);
  const double ey = 1e-12 * (bounds_.ymax - bounds_.ymin);
  return p[0] >= bounds_.xmin - ex && p[0] <= bounds_.xmax + ex && p[1] >= bounds_.ymin - ey &&
         p[1] <= bounds_.ymax + ey;
}

Node2 Grid2::nearest_node(const Vec3& p) const {
  return {nearest_index(p[0], bounds_.xmin, dx_, I_), nearest_index(p[1], bounds_.ymin, dy_, J_)};
}

Grid3::Grid3(Bounds3 bounds, int I, int J, int K, int ghost, bool periodic_z)
    : bounds_(bounds), I_(I), J_(J), K_(K), ghost_(ghost), periodic_z_(periodic_z) {
  check_axis("x", bounds.xmin, bounds.xmax, I);
  check_axis("y", bounds.ymin, bounds.ymax, J);
  check_axis("z", bounds.zmin, bounds.zmax, K);
  if (ghost < 1) throw std::invalid_argument("grid: ghost width must be >= 1");
  dx_ = (bounds.xmax - bounds.xmin) / I;
  dy_ = (bounds.ymax - bounds.ymin) / J;
  dz_ = (bounds.zmax - bounds.zmin) / K;
  nx_ = I + 1 + 2 * ghost;
  ny_ = J + 1 + 2 * ghost;
  nz_ = nodes_z() + 2 * ghost;
}

bool Grid3::is_cube(double rel_tol) const {
  return approx_equal_spacing(dx_, dy_, rel_tol) && approx_equal_spacing(dx_, dz_, rel_tol);
}

bool Grid3::contains(const Vec3& p) const {
  const double ex = 1e-12 * (bounds_.xmax - bounds_.xmin);
  const double ey = 1e-12 * (bounds_.ymax - bounds_.ymin);
  const double ez = 1e-12 * (bounds_.zmax - bounds_.zmin);
  const bool in_xy = p[0] >= bounds_.xmin - ex && p[0] <= bounds_.xmax + ex &&
                     p[1] >= bounds_.ymin - ey && p[1] <= bounds_.ymax + ey;
  if (periodic_z_) return in_xy;
  return in_xy && p[2] >= bounds_.zmin - ez && p[2] <= bounds_.zmax + ez;
}

Node3 Grid3::nearest_node(const Vec3& p) const {
  Node3 n{nearest_index(p[0], bounds_.xmin, dx_, I_), nearest_index(p[1], bounds_.ymin, dy_, J_), 0};
  if (periodic_z_) {
    n.k = wrap_k(static_cast<int>(std::lround((p[2] - bounds_.zmin) / dz_)));
  } else {
    n.k = nearest_index(p[2], bounds_.zmin, dz_, K_);
  }
  return n;
}

int Grid3::wrap_k(int k) const {
  if (!periodic_z_) return k;
  const int m = k % K_;
  return m < 0 ? m + K_ : m;
}

Grid2 build_grid2(Bounds2 bounds, int I, int J, int ghost) { return Grid2(bounds, I, J, ghost); }

Grid3 build_grid3(Bounds3 bounds, int I, int J, int K, int ghost, bool periodic_z) {
  return Grid3(bounds, I, J, K, ghost, periodic_z);
}

}  // namespace hjsweep
