#pragma once

#include <array>
#include <cstddef>

namespace hjsweep {

using Vec3 = std::array<double, 3>;

struct Bounds2 {
  double xmin, xmax, ymin, ymax;
};

struct Bounds3 {
  double xmin, xmax, ymin, ymax, zmin, zmax;
};

struct Node2 {
  int i, j;
  friend bool operator==(const Node2&, const Node2&) = default;
};

struct Node3 {
  int i, j, k;
  friend bool operator==(const Node3&, const Node3&) = default;
};

/// Uniform node-centred lattice on [xmin,xmax] x [ymin,ymax] with I x J cells.
///
/// Nodes are (i, j) with 0 <= i <= I, 0 <= j <= J. Storage is padded by
/// `ghost` extra layers on every side so wide stencils can read past the
/// computational frame without branching. Storage is i-major: the linear
/// stride along i is `stride_x()`, along j it is 1.
class Grid2 {
 public:
  Grid2(Bounds2 bounds, int I, int J, int ghost);

  double xmin() const { return bounds_.xmin; }
  double xmax() const { return bounds_.xmax; }
  double ymin() const { return bounds_.ymin; }
  double ymax() const { return bounds_.ymax; }
  const Bounds2& bounds() const { return bounds_; }
  int I() const { return I_; }
  int J() const { return J_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  int ghost() const { return ghost_; }

  double x(int i) const { return bounds_.xmin + i * dx_; }
  double y(int j) const { return bounds_.ymin + j * dy_; }
  Vec3 point(int i, int j) const { return {x(i), y(j), 0.0}; }

  bool is_square(double rel_tol = 1e-12) const;
  bool contains(const Vec3& p) const;
  /// Nearest node, clamped to the frame.
  Node2 nearest_node(const Vec3& p) const;

  std::ptrdiff_t stride_x() const { return ny_; }
  static constexpr std::ptrdiff_t stride_y() { return 1; }
  std::size_t storage_size() const { return static_cast<std::size_t>(nx_) * ny_; }
  std::ptrdiff_t index(int i, int j) const {
    return static_cast<std::ptrdiff_t>(i + ghost_) * ny_ + (j + ghost_);
  }

  /// Same lattice with a different ghost width.
  Grid2 with_ghost(int ghost) const { return Grid2(bounds_, I_, J_, ghost); }

 private:
  Bounds2 bounds_;
  int I_, J_;
  double dx_, dy_;
  int ghost_;
  int nx_, ny_;
};

/// Three-dimensional analogue of Grid2. The third axis may be periodic, in
/// which case it holds K distinct nodes k = 0..K-1 and node K aliases node 0.
class Grid3 {
 public:
  Grid3(Bounds3 bounds, int I, int J, int K, int ghost, bool periodic_z = false);

  const Bounds3& bounds() const { return bounds_; }
  double xmin() const { return bounds_.xmin; }
  double xmax() const { return bounds_.xmax; }
  double ymin() const { return bounds_.ymin; }
  double ymax() const { return bounds_.ymax; }
  double zmin() const { return bounds_.zmin; }
  double zmax() const { return bounds_.zmax; }
  int I() const { return I_; }
  int J() const { return J_; }
  int K() const { return K_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  double dz() const { return dz_; }
  int ghost() const { return ghost_; }
  bool periodic_z() const { return periodic_z_; }
  /// Number of distinct nodes along z: K when periodic, K+1 otherwise.
  int nodes_z() const { return periodic_z_ ? K_ : K_ + 1; }

  double x(int i) const { return bounds_.xmin + i * dx_; }
  double y(int j) const { return bounds_.ymin + j * dy_; }
  double z(int k) const { return bounds_.zmin + k * dz_; }
  Vec3 point(int i, int j, int k) const { return {x(i), y(j), z(k)}; }

  bool is_cube(double rel_tol = 1e-12) const;
  bool contains(const Vec3& p) const;
  Node3 nearest_node(const Vec3& p) const;
  /// Wraps k into [0, K) on a periodic axis; identity otherwise.
  int wrap_k(int k) const;

  std::ptrdiff_t stride_x() const { return static_cast<std::ptrdiff_t>(ny_) * nz_; }
  std::ptrdiff_t stride_y() const { return nz_; }
  static constexpr std::ptrdiff_t stride_z() { return 1; }
  std::size_t storage_size() const {
    return static_cast<std::size_t>(nx_) * ny_ * nz_;
  }
  std::ptrdiff_t index(int i, int j, int k) const {
    return (static_cast<std::ptrdiff_t>(i + ghost_) * ny_ + (j + ghost_)) * nz_ + (k + ghost_);
  }

  Grid3 with_ghost(int ghost) const {
    return Grid3(bounds_, I_, J_, K_, ghost, periodic_z_);
  }

 private:
  Bounds3 bounds_;
  int I_, J_, K_;
  double dx_, dy_, dz_;
  int ghost_;
  bool periodic_z_;
  int nx_, ny_, nz_;
};

Grid2 build_grid2(Bounds2 bounds, int I, int J, int ghost);
Grid3 build_grid3(Bounds3 bounds, int I, int J, int K, int ghost, bool periodic_z = false);

bool approx_equal_spacing(double a, double b, double rel_tol = 1e-12);

}  // namespace hjsweep
