#include "hjsweep/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace hjsweep {
namespace {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

int totient(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

void finish_axes(RotationDir3& r, const Grid3& grid) {
  const Vec3 h{grid.dx(), grid.dy(), grid.dz()};
  for (int l = 0; l < 3; ++l) {
    Vec3 phys{};
    for (int c = 0; c < 3; ++c) phys[c] = r.axis[l][c] * h[c];
    r.spacing[l] = norm(phys);
    for (int c = 0; c < 3; ++c) r.unit[l][c] = phys[c] / r.spacing[l];
  }
}

}  // namespace

RotationDir2 make_rotation2(int ihat, int jhat, double dx, double dy) {
  if (ihat < 1 || jhat < 1) {
    throw std::invalid_argument("rotation: ihat and jhat must be positive");
  }
  if (std::gcd(ihat, jhat) != 1) {
    throw std::invalid_argument("rotation: (" + std::to_string(ihat) + "," + std::to_string(jhat) +
                                ") is not reduced");
  }
  RotationDir2 r;
  r.ihat = ihat;
  r.jhat = jhat;
  r.beta = std::atan2(static_cast<double>(jhat), static_cast<double>(ihat));
  r.ds = std::hypot(ihat * dx, jhat * dy);
  return r;
}

int rotation_angle_count(int M) {
  int s = 0;
  for (int m = 1; m <= M; ++m) s += totient(m);
  return 2 * s - 1;
}

std::vector<RotationDir2> enumerate_rotations(int M, double dx, double dy) {
  if (M < 1) throw std::invalid_argument("rotation: M must be >= 1");
  if (!approx_equal_spacing(dx, dy)) {
    throw std::invalid_argument("rotation: rotated stencils require a square grid (dx == dy)");
  }
  std::vector<RotationDir2> out;
  for (int i = 1; i <= M; ++i) {
    for (int j = 1; j <= M; ++j) {
      if (std::gcd(i, j) == 1) out.push_back(make_rotation2(i, j, dx, dy));
    }
  }
  // jhat/ihat is strictly monotone in beta, so compare the rationals exactly.
  std::sort(out.begin(), out.end(), [](const RotationDir2& a, const RotationDir2& b) {
    return a.jhat * b.ihat < b.jhat * a.ihat;
  });
  return out;
}

int RotationDir3::max_offset() const {
  int m = 0;
  for (const auto& u : axis)
    for (int c : u) m = std::max(m, std::abs(c));
  return m;
}

RotationDir3 rotation3_from_triple(int ihat, int jhat, int khat, const Grid3& grid, RotationMode mode) {
  if (ihat == 0 && jhat == 0 && khat == 0) {
    throw std::invalid_argument("rotation3: the all-zero triple has no direction");
  }
  RotationDir3 r;
  r.ihat = ihat;
  r.jhat = jhat;
  r.khat = khat;
  r.mode = mode;

  // Planar rotation in the (p, q) coordinate plane with the remaining axis fixed.
  auto planar = [&](int p, int q, int fixed, int a, int b, double hp, double hq) {
    if (a == 0 && b == 0) {
      throw std::invalid_argument("rotation3: planar pair is zero for an axis-fixed rotation");
    }
    if (!approx_equal_spacing(hp, hq)) {
      throw std::invalid_argument("rotation3: axis-fixed rotation needs equal spacing in its plane");
    }
    r.axis[0] = {0, 0, 0};
    r.axis[1] = {0, 0, 0};
    r.axis[2] = {0, 0, 0};
    r.axis[0][p] = a;
    r.axis[0][q] = b;
    r.axis[1][p] = -b;
    r.axis[1][q] = a;
    r.axis[2][fixed] = 1;
  };

  switch (mode) {
    case RotationMode::AxisFixedX:
      planar(1, 2, 0, jhat, khat, grid.dy(), grid.dz());
      break;
    case RotationMode::AxisFixedY:
      planar(0, 2, 1, ihat, khat, grid.dx(), grid.dz());
      break;
    case RotationMode::AxisFixedZ:
      planar(0, 1, 2, ihat, jhat, grid.dx(), grid.dy());
      break;
    case RotationMode::General:
      if (ihat == 0 && jhat == 0) {
        throw std::invalid_argument("rotation3: general mode needs (ihat, jhat) not both zero");
      }
      if (!grid.is_cube()) {
        throw std::invalid_argument("rotation3: general rotations require cube spacing");
      }
      r.axis[0] = {ihat, jhat, khat};
      r.axis[1] = {-jhat, ihat, 0};
      r.axis[2] = {-ihat * khat, -jhat * khat, ihat * ihat + jhat * jhat};
      break;
  }
  finish_axes(r, grid);
  return r;
}

std::vector<RotationDir3> edge_rotations(const Grid3& grid) {
  std::vector<RotationDir3> out;
  auto x = rotation3_from_triple(0, 1, 1, grid, RotationMode::AxisFixedX);
  x.label = "x";
  auto y = rotation3_from_triple(1, 0, 1, grid, RotationMode::AxisFixedY);
  y.label = "y";
  auto z = rotation3_from_triple(1, 1, 0, grid, RotationMode::AxisFixedZ);
  z.label = "z";
  out.push_back(std::move(x));
  out.push_back(std::move(y));
  out.push_back(std::move(z));
  return out;
}

RotationDir3 corner_rotation(const std::string& label, const Grid3& grid) {
  if (label.size() != 3 || label[0] != '+') {
    throw std::invalid_argument("rotation3: unknown corner preset '" + label + "'");
  }
  auto sgn = [&](char c) {
    if (c == '+') return 1;
    if (c == '-') return -1;
    throw std::invalid_argument("rotation3: unknown corner preset '" + label + "'");
  };
  auto r = rotation3_from_triple(1, sgn(label[1]), sgn(label[2]), grid, RotationMode::General);
  r.label = label;
  return r;
}

std::vector<RotationDir3> corner_rotations(const Grid3& grid) {
  return {corner_rotation("+++", grid), corner_rotation("+-+", grid), corner_rotation("++-", grid),
          corner_rotation("+--", grid)};
}

}  // namespace hjsweep
