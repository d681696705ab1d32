#pragma once

#include <array>
#include <string>
#include <vector>

#include "hjsweep/grid.hpp"

namespace hjsweep {

/// Lattice direction (ihat, jhat) used as the rotated x-axis of a square grid.
/// The rotated y-axis is (-jhat, ihat). Both neighbours sit on grid nodes, so
/// the rotated stencil needs no interpolation.
struct RotationDir2 {
  int ihat = 1;
  int jhat = 1;
  double beta = 0.0;  ///< arctan(jhat / ihat)
  double ds = 0.0;    ///< length of the lattice step (ihat*dx, jhat*dy)

  friend bool operator==(const RotationDir2&, const RotationDir2&) = default;
};

/// Validated constructor: ihat, jhat >= 1 and coprime.
RotationDir2 make_rotation2(int ihat, int jhat, double dx, double dy);

/// One representative per distinct angle among 1 <= ihat, jhat <= M, sorted
/// by angle. The count is 2 * (phi(1) + ... + phi(M)) - 1 with phi Euler's
/// totient. Throws unless dx == dy.
std::vector<RotationDir2> enumerate_rotations(int M, double dx, double dy);

/// 2 * sum_{m<=M} totient(m) - 1
int rotation_angle_count(int M);

enum class RotationMode { AxisFixedX, AxisFixedY, AxisFixedZ, General };

using IVec3 = std::array<int, 3>;

struct RotationDir3 {
  int ihat = 0, jhat = 0, khat = 0;
  RotationMode mode = RotationMode::General;
  /// Integer lattice offsets of the three rotated axes.
  std::array<IVec3, 3> axis{};
  /// Physical length of one lattice step along each rotated axis.
  Vec3 spacing{};
  /// Unit vectors of the rotated axes in physical coordinates.
  std::array<Vec3, 3> unit{};
  std::string label;

  int max_offset() const;
};

/// General mode: u1 = (i,j,k), u2 = (-j,i,0), u3 = (-ik,-jk,i^2+j^2).
/// Axis-fixed modes rotate the plane orthogonal to the fixed axis by the
/// planar pair taken from the two remaining components, leaving the fixed
/// axis untouched.
RotationDir3 rotation3_from_triple(int ihat, int jhat, int khat, const Grid3& grid, RotationMode mode);

/// The three axis-fixed pi/4 rotations used to sharpen the edges of cube-shaped
/// level sets.
std::vector<RotationDir3> edge_rotations(const Grid3& grid);

/// Corner rotations pointing along (1,1,1), (1,-1,1), (1,1,-1) and (1,-1,-1),
/// labelled "+++", "+-+", "++-" and "+--".
std::vector<RotationDir3> corner_rotations(const Grid3& grid);
RotationDir3 corner_rotation(const std::string& label, const Grid3& grid);

}  // namespace hjsweep
