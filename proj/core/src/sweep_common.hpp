#pragma once

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "hjsweep/field.hpp"
#include "hjsweep/problem.hpp"

namespace hjsweep::detail {

inline double abs_change(double a, double b) {
  if (a == b) return 0.0;  // also inf == inf
  return std::abs(a - b);
}

inline FieldOrientation field_orientation(const ControlProblem& p) {
  return p.orientation == Orientation::Min ? FieldOrientation::MinInfInit : FieldOrientation::MaxNegInfInit;
}

/// Sets every lattice node (ghost layers excluded) to `value`.
inline void fill_nodes(Field2& field, double value) {
  const Grid2& g = field.grid();
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j) field(i, j) = value;
}

inline void fill_nodes(Field3& field, double value) {
  const Grid3& g = field.grid();
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j)
      for (int k = 0; k < g.nodes_z(); ++k) field(i, j, k) = value;
}

/// Writes the boundary data into the field and marks those nodes frozen.
inline void apply_boundary(const ControlProblem& problem, Field2& field, std::vector<std::uint8_t>& frozen) {
  const Grid2& g = field.grid();
  frozen.assign(g.storage_size(), 0);
  for (const auto& b : problem.boundary) {
    if (!g.contains(b.point)) throw std::invalid_argument("boundary point outside the grid");
    const Node2 n = g.nearest_node(b.point);
    const auto idx = g.index(n.i, n.j);
    field[idx] = b.value;
    frozen[static_cast<std::size_t>(idx)] = 1;
  }
}

inline void apply_boundary(const ControlProblem& problem, Field3& field, std::vector<std::uint8_t>& frozen) {
  const Grid3& g = field.grid();
  frozen.assign(g.storage_size(), 0);
  for (const auto& b : problem.boundary) {
    if (!g.contains(b.point)) throw std::invalid_argument("boundary point outside the grid");
    const Node3 n = g.nearest_node(b.point);
    const auto idx = g.index(n.i, n.j, n.k);
    field[idx] = b.value;
    frozen[static_cast<std::size_t>(idx)] = 1;
  }
}

/// Visits every node i = 0..I, j = 0..J in sweep order s (0..3):
/// (i up, j up), (i up, j down), (i down, j down), (i down, j up).
template <class Fn>
inline void sweep_order2(const Grid2& g, int s, Fn&& fn) {
  const bool i_up = s < 2;
  const bool j_up = s == 0 || s == 3;
  const int I = g.I();
  const int J = g.J();
  for (int a = 0; a <= I; ++a) {
    const int i = i_up ? a : I - a;
    for (int b = 0; b <= J; ++b) {
      const int j = j_up ? b : J - b;
      fn(i, j, g.index(i, j));
    }
  }
}

/// 3D analogue with 8 orderings; bit 0 flips k, bit 1 flips j, bit 2 flips i.
/// On a periodic third axis the K distinct slabs are visited.
template <class Fn>
inline void sweep_order3(const Grid3& g, int s, Fn&& fn) {
  const bool i_up = !(s & 4);
  const bool j_up = !(s & 2);
  const bool k_up = !(s & 1);
  const int I = g.I();
  const int J = g.J();
  const int k1 = g.nodes_z() - 1;
  for (int a = 0; a <= I; ++a) {
    const int i = i_up ? a : I - a;
    for (int b = 0; b <= J; ++b) {
      const int j = j_up ? b : J - b;
      for (int c = 0; c <= k1; ++c) {
        const int k = k_up ? c : k1 - c;
        fn(i, j, k, g.index(i, j, k));
      }
    }
  }
}

template <class GridT>
inline double linf_change2(const GridT& g, const std::vector<double>& prev, std::span<const double> cur) {
  double m = 0.0;
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j) {
      const auto idx = static_cast<std::size_t>(g.index(i, j));
      m = std::max(m, abs_change(prev[idx], cur[idx]));
    }
  return m;
}

inline double linf_change3(const Grid3& g, const std::vector<double>& prev, std::span<const double> cur) {
  double m = 0.0;
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j)
      for (int k = 0; k < g.nodes_z(); ++k) {
        const auto idx = static_cast<std::size_t>(g.index(i, j, k));
        m = std::max(m, abs_change(prev[idx], cur[idx]));
      }
  return m;
}

}  // namespace hjsweep::detail
