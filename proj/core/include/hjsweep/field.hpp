#pragma once

#include <limits>
#include <span>
#include <vector>

#include "hjsweep/grid.hpp"

namespace hjsweep {

/// Which sentinel a field starts from and which way its values may move.
/// MinInfInit fields start at +inf off the boundary and only decrease;
/// MaxNegInfInit fields start at -inf and only increase.
enum class FieldOrientation { MinInfInit, MaxNegInfInit };

inline double sentinel_for(FieldOrientation o) {
  return o == FieldOrientation::MinInfInit ? std::numeric_limits<double>::infinity()
                                           : -std::numeric_limits<double>::infinity();
}

template <class GridT>
class BasicField {
 public:
  BasicField(GridT grid, FieldOrientation orientation)
      : grid_(std::move(grid)),
        orientation_(orientation),
        values_(grid_.storage_size(), sentinel_for(orientation)) {}

  const GridT& grid() const { return grid_; }
  FieldOrientation orientation() const { return orientation_; }
  double sentinel() const { return sentinel_for(orientation_); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double operator[](std::ptrdiff_t idx) const { return values_[static_cast<std::size_t>(idx)]; }
  double& operator[](std::ptrdiff_t idx) { return values_[static_cast<std::size_t>(idx)]; }

 protected:
  GridT grid_;
  FieldOrientation orientation_;
  std::vector<double> values_;
};

class Field2 : public BasicField<Grid2> {
 public:
  using BasicField::BasicField;
  using BasicField::operator[];

  double operator()(int i, int j) const { return (*this)[grid_.index(i, j)]; }
  double& operator()(int i, int j) { return (*this)[grid_.index(i, j)]; }
};

class Field3 : public BasicField<Grid3> {
 public:
  using BasicField::BasicField;
  using BasicField::operator[];

  /// k is wrapped on a periodic third axis.
  double operator()(int i, int j, int k) const { return (*this)[grid_.index(i, j, grid_.wrap_k(k))]; }
  double& operator()(int i, int j, int k) { return (*this)[grid_.index(i, j, grid_.wrap_k(k))]; }
};

}  // namespace hjsweep
