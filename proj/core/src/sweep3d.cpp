#include "hjsweep/sweep3d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stencil.hpp"
#include "sweep_common.hpp"

namespace hjsweep {
namespace {

using detail::LatticeOffsets;
using detail::RawStencil;
using detail::StencilTable;

RotationDir3 refit(const RotationDir3& r, const Grid3& g) {
  RotationDir3 out = rotation3_from_triple(r.ihat, r.jhat, r.khat, g, r.mode);
  out.label = r.label;
  return out;
}

void check_node(const Grid3& g, int i, int j, int k) {
  const bool k_ok = g.periodic_z() || (k >= 0 && k <= g.K());
  if (i < 0 || i > g.I() || j < 0 || j > g.J() || !k_ok) {
    throw std::out_of_range("node (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                            ") is outside the grid");
  }
}

std::optional<double> eval_at(const Field3& field, const ControlProblem& problem, int i, int j, int k,
                              const RawStencil& s) {
  const Grid3& g = field.grid();
  const auto idx = g.index(i, j, k);
  double out;
  if (!detail::eval_raw(s, problem.running_cost(g.point(i, j, k)), [&](std::ptrdiff_t o) { return field[idx + o]; },
                        out)) {
    return std::nullopt;
  }
  return out;
}

class Sweeper3 {
 public:
  Sweeper3(const ControlProblem& problem, Field3& field, std::vector<RotationDir3> rotations, double init_value)
      : problem_(problem), field_(field), grid_(field.grid()), rotations_(std::move(rotations)) {
    const bool is_min = problem_.orientation == Orientation::Min;
    if (is_min) detail::fill_nodes(field_, init_value);
    const auto n = grid_.storage_size();
    r_.assign(n, 0.0);
    if (!is_min) floor_.assign(n, -std::numeric_limits<double>::infinity());
    for (int i = 0; i <= grid_.I(); ++i)
      for (int j = 0; j <= grid_.J(); ++j)
        for (int k = 0; k < grid_.nodes_z(); ++k) {
          const auto idx = static_cast<std::size_t>(grid_.index(i, j, k));
          const Vec3 x = grid_.point(i, j, k);
          r_[idx] = problem_.running_cost(x);
          if (!is_min && problem_.floor) floor_[idx] = problem_.floor(x);
        }
    detail::apply_boundary(problem_, field_, frozen_);

    const auto dep = problem_.dependence;
    full_ = dep == DynamicsDependence::Full;
    if (full_) return;
    // Offsets only depend on k when the third axis wraps.
    per_slab_ = dep == DynamicsDependence::ThirdAxisOnly || grid_.periodic_z();
    const int slabs = per_slab_ ? grid_.nodes_z() : 1;
    const std::size_t rules = 1 + rotations_.size();
    tables_.resize(static_cast<std::size_t>(slabs) * rules);
    const Vec3 h{grid_.dx(), grid_.dy(), grid_.dz()};
    for (int k = 0; k < slabs; ++k) {
      const LatticeOffsets o = detail::offsets_for(grid_, k);
      const Vec3 x = grid_.point(0, 0, k);
      for (const auto& a : problem_.controls.samples()) {
        const Vec3 f = problem_.dynamics(x, a);
        tables_[static_cast<std::size_t>(k) * rules].add(detail::basic_stencil3(f, h, o));
        for (std::size_t q = 0; q < rotations_.size(); ++q) {
          tables_[static_cast<std::size_t>(k) * rules + q + 1].add(detail::rotated_stencil3(f, rotations_[q], o));
        }
      }
    }
    for (auto& t : tables_) t.finalize();
  }

  double pass() {
    prev_.assign(field_.values().begin(), field_.values().end());
    double* v = field_.values().data();
    for (int s = 0; s < 8; ++s) {
      detail::sweep_order3(grid_, s, [&](int i, int j, int k, std::ptrdiff_t idx) {
        if (frozen_[static_cast<std::size_t>(idx)]) return;
        update_node(v, i, j, k, idx);
      });
    }
    return detail::linf_change3(grid_, prev_, field_.values());
  }

 private:
  void update_node(double* v, int i, int j, int k, std::ptrdiff_t idx) {
    const auto u = static_cast<std::size_t>(idx);
    const double r = r_[u];
    const double* base = v + idx;
    auto fetch = [base](std::ptrdiff_t off) { return base[off]; };
    const bool is_min = problem_.orientation == Orientation::Min;
    double best = is_min ? v[idx] : std::max(v[idx], floor_[u]);
    if (!full_) {
      const std::size_t rules = 1 + rotations_.size();
      const std::size_t first = per_slab_ ? static_cast<std::size_t>(k) * rules : 0;
      for (std::size_t q = 0; q < rules; ++q) {
        if (is_min) {
          detail::eval_table_min(tables_[first + q], r, fetch, best);
        } else {
          detail::eval_table_max(tables_[first + q], r, fetch, best);
        }
      }
    } else {
      const LatticeOffsets o = detail::offsets_for(grid_, k);
      const Vec3 x = grid_.point(i, j, k);
      const Vec3 h{grid_.dx(), grid_.dy(), grid_.dz()};
      for (const auto& a : problem_.controls.samples()) {
        const Vec3 f = problem_.dynamics(x, a);
        for (std::size_t q = 0; q <= rotations_.size(); ++q) {
          const RawStencil s =
              q == 0 ? detail::basic_stencil3(f, h, o) : detail::rotated_stencil3(f, rotations_[q - 1], o);
          double c;
          if (!detail::eval_raw(s, r, fetch, c)) continue;
          best = is_min ? std::min(best, c) : std::max(best, c);
        }
      }
    }
    v[idx] = best;
  }

  const ControlProblem& problem_;
  Field3& field_;
  const Grid3& grid_;
  std::vector<RotationDir3> rotations_;
  std::vector<double> r_, floor_, prev_;
  std::vector<std::uint8_t> frozen_;
  bool full_ = false;
  bool per_slab_ = false;
  std::vector<StencilTable> tables_;
};

}  // namespace

void SolverConfig3::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("solver3: tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("solver3: max_iters must be >= 1");
  if (!(init_value > 0.0)) throw std::invalid_argument("solver3: init_value must be positive");
}

std::optional<double> basic_update3(const Field3& field, const ControlProblem& problem, int i, int j, int k,
                                    const Control& a) {
  const Grid3& g = field.grid();
  check_node(g, i, j, k);
  k = g.wrap_k(k);
  const Vec3 h{g.dx(), g.dy(), g.dz()};
  return eval_at(field, problem, i, j, k,
                 detail::basic_stencil3(problem.dynamics(g.point(i, j, k), a), h, detail::offsets_for(g, k)));
}

std::optional<double> rotated_update3(const Field3& field, const ControlProblem& problem, int i, int j, int k,
                                      const Control& a, const RotationDir3& rot) {
  const Grid3& g = field.grid();
  check_node(g, i, j, k);
  if (g.ghost() < rot.max_offset()) throw std::invalid_argument("rotated_update3: ghost narrower than the rotation");
  k = g.wrap_k(k);
  const RotationDir3 fitted = refit(rot, g);
  return eval_at(field, problem, i, j, k,
                 detail::rotated_stencil3(problem.dynamics(g.point(i, j, k), a), fitted, detail::offsets_for(g, k)));
}

SolveResult3 sweep_solve3(const ControlProblem& problem, const Grid3& grid_in, const SolverConfig3& config) {
  problem.validate();
  config.validate();
  if (problem.dim != 3) throw std::invalid_argument("sweep_solve3: problem is not three-dimensional");
  int ghost = grid_in.ghost();
  for (const auto& r : config.rotations) ghost = std::max(ghost, r.max_offset());
  SolveResult3 res{Field3(grid_in.with_ghost(ghost), detail::field_orientation(problem)), 0, {}, false};
  const Grid3& grid = res.field.grid();
  std::vector<RotationDir3> rotations;
  for (const auto& r : config.rotations) rotations.push_back(refit(r, grid));

  Sweeper3 sweeper(problem, res.field, std::move(rotations), config.init_value);
  for (int p = 1; p <= config.max_iters; ++p) {
    const double change = sweeper.pass();
    res.residuals.push_back(change);
    if (change <= config.tol) {
      res.iterations = p - 1;
      res.converged = true;
      return res;
    }
  }
  res.iterations = config.max_iters;
  return res;
}

}  // namespace hjsweep
