#include "hjsweep/sweep2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "stencil.hpp"
#include "sweep_common.hpp"

namespace hjsweep {
namespace {

using detail::LatticeOffsets;
using detail::RawStencil;
using detail::StencilTable;

void check_interior(const Grid2& g, int i, int j) {
  if (i < 0 || i > g.I() || j < 0 || j > g.J()) {
    throw std::out_of_range("node (" + std::to_string(i) + "," + std::to_string(j) + ") is outside the grid");
  }
}

void check_rotation(const Grid2& g, const RotationDir2& rot) {
  if (!g.is_square()) throw std::invalid_argument("rotated update requires a square grid (dx == dy)");
  if (g.ghost() < std::max(rot.ihat, rot.jhat)) {
    throw std::invalid_argument("rotated update needs ghost >= max(ihat, jhat)");
  }
}

struct WenoAt {
  double px_plus, px_minus, py_plus, py_minus;
};

// Derivative toward the n1/n2 side; o1 is the node opposite n1. Ghost reads
// (non-finite) are taken in the limit of a very large ghost value: a ghost in
// the far slot zeroes the one-sided weight, a ghost opposite makes the
// approximation purely one-sided, a ghost next door makes the side unusable.
inline double weno_side(double c, double n1, double n2, double o1, double h, double eps) {
  if (!std::isfinite(n1)) return std::numeric_limits<double>::infinity();
  const bool far_ok = std::isfinite(n2);
  const bool opp_ok = std::isfinite(o1);
  if (!far_ok && !opp_ok) return std::numeric_limits<double>::quiet_NaN();
  if (!far_ok) return (n1 - o1) / (2.0 * h);
  const double one_sided = (-n2 + 4.0 * n1 - 3.0 * c) / (2.0 * h);
  if (!opp_ok) return one_sided;
  const double outer = n2 - 2.0 * n1 + c;
  const double inner = n1 - 2.0 * c + o1;
  const double r = (eps + outer * outer) / (eps + inner * inner);
  const double w = 1.0 / (1.0 + 2.0 * r * r);
  return (1.0 - w) * (n1 - o1) / (2.0 * h) + w * one_sided;
}

// One-sided WENO pair along a line with stride s; false if not applicable.
inline bool weno_pair(const double* v, std::ptrdiff_t s, double h, double eps, double& plus, double& minus) {
  const double c = v[0];
  if (!std::isfinite(c)) return false;
  plus = weno_side(c, v[s], v[2 * s], v[-s], h, eps);
  minus = -weno_side(c, v[-s], v[-2 * s], v[s], h, eps);
  return !std::isnan(plus) && !std::isnan(minus);
}

inline bool weno_at(const Grid2& g, const double* v, double eps, WenoAt& out) {
  return weno_pair(v, g.stride_x(), g.dx(), eps, out.px_plus, out.px_minus) &&
         weno_pair(v, Grid2::stride_y(), g.dy(), eps, out.py_plus, out.py_minus);
}

// Neighbour values phi_ij +- h * D^{+-} standing in for the true neighbours.
struct WenoFetch {
  const double* v;
  std::ptrdiff_t sx;
  double dx, dy;
  WenoAt d;

  double operator()(std::ptrdiff_t off) const {
    if (off == sx) return v[0] + dx * d.px_plus;
    if (off == -sx) return v[0] - dx * d.px_minus;
    if (off == 1) return v[0] + dy * d.py_plus;
    return v[0] - dy * d.py_minus;
  }
};

class Sweeper2 {
 public:
  Sweeper2(const ControlProblem& problem, Field2& field, std::vector<RotationDir2> rotations, double init_value)
      : problem_(problem), field_(field), grid_(field.grid()), rotations_(std::move(rotations)) {
    if (problem_.orientation == Orientation::Min) detail::fill_nodes(field_, init_value);
    const auto n = grid_.storage_size();
    r_.assign(n, 0.0);
    if (problem_.orientation == Orientation::Max) floor_.assign(n, -std::numeric_limits<double>::infinity());
    for (int i = 0; i <= grid_.I(); ++i) {
      for (int j = 0; j <= grid_.J(); ++j) {
        const auto idx = static_cast<std::size_t>(grid_.index(i, j));
        const Vec3 x = grid_.point(i, j);
        r_[idx] = problem_.running_cost(x);
        if (!floor_.empty() && problem_.floor) floor_[idx] = problem_.floor(x);
      }
    }
    detail::apply_boundary(problem_, field_, frozen_);

    full_ = problem_.dependence == DynamicsDependence::Full;
    if (!full_) {
      const LatticeOffsets o = detail::offsets_for(grid_);
      const Vec3 origin = grid_.point(0, 0);
      tables_.resize(1 + rotations_.size());
      for (const auto& a : problem_.controls.samples()) {
        const Vec3 f = problem_.dynamics(origin, a);
        tables_[0].add(detail::basic_stencil2(f, grid_.dx(), grid_.dy(), o));
        for (std::size_t q = 0; q < rotations_.size(); ++q) {
          tables_[q + 1].add(detail::rotated_stencil2(f, rotations_[q], o));
        }
      }
      for (auto& t : tables_) t.finalize();
    }
    active_.resize(1 + rotations_.size());
    std::iota(active_.begin(), active_.end(), 0);
  }

  void set_active(std::vector<int> rules) { active_ = std::move(rules); }

  double pass() {
    prev_.assign(field_.values().begin(), field_.values().end());
    double* v = field_.values().data();
    for (int s = 0; s < 4; ++s) {
      detail::sweep_order2(grid_, s, [&](int i, int j, std::ptrdiff_t idx) {
        if (frozen_[static_cast<std::size_t>(idx)]) return;
        update_node(v, i, j, idx);
      });
    }
    return detail::linf_change2(grid_, prev_, field_.values());
  }

  double weno_pass(double eps) {
    prev_.assign(field_.values().begin(), field_.values().end());
    double* v = field_.values().data();
    const LatticeOffsets o = detail::offsets_for(grid_);
    for (int s = 0; s < 4; ++s) {
      detail::sweep_order2(grid_, s, [&](int i, int j, std::ptrdiff_t idx) {
        if (frozen_[static_cast<std::size_t>(idx)]) return;
        WenoAt d{};
        if (!weno_at(grid_, v + idx, eps, d)) {
          update_node(v, i, j, idx);
          return;
        }
        const WenoFetch fetch{v + idx, grid_.stride_x(), grid_.dx(), grid_.dy(), d};
        double best = v[idx];
        const double r = r_[static_cast<std::size_t>(idx)];
        if (!full_) {
          detail::eval_table_min(tables_[0], r, fetch, best);
        } else {
          const Vec3 x = grid_.point(i, j);
          for (const auto& a : problem_.controls.samples()) {
            double c;
            if (detail::eval_raw(detail::basic_stencil2(problem_.dynamics(x, a), grid_.dx(), grid_.dy(), o), r,
                                 fetch, c)) {
              best = std::min(best, c);
            }
          }
        }
        v[idx] = best;
      });
    }
    return detail::linf_change2(grid_, prev_, field_.values());
  }

 private:
  void update_node(double* v, int i, int j, std::ptrdiff_t idx) {
    const auto u = static_cast<std::size_t>(idx);
    const double r = r_[u];
    const double* base = v + idx;
    auto fetch = [base](std::ptrdiff_t off) { return base[off]; };
    const bool is_min = problem_.orientation == Orientation::Min;
    double best = is_min ? v[idx] : std::max(v[idx], floor_[u]);
    if (!full_) {
      for (int rule : active_) {
        if (is_min) {
          detail::eval_table_min(tables_[static_cast<std::size_t>(rule)], r, fetch, best);
        } else {
          detail::eval_table_max(tables_[static_cast<std::size_t>(rule)], r, fetch, best);
        }
      }
    } else {
      const LatticeOffsets o = detail::offsets_for(grid_);
      const Vec3 x = grid_.point(i, j);
      for (const auto& a : problem_.controls.samples()) {
        const Vec3 f = problem_.dynamics(x, a);
        for (int rule : active_) {
          const RawStencil s = rule == 0 ? detail::basic_stencil2(f, grid_.dx(), grid_.dy(), o)
                                         : detail::rotated_stencil2(f, rotations_[static_cast<std::size_t>(rule - 1)], o);
          double c;
          if (!detail::eval_raw(s, r, fetch, c)) continue;
          best = is_min ? std::min(best, c) : std::max(best, c);
        }
      }
    }
    v[idx] = best;
  }

  const ControlProblem& problem_;
  Field2& field_;
  const Grid2& grid_;
  std::vector<RotationDir2> rotations_;
  std::vector<double> r_, floor_, prev_;
  std::vector<std::uint8_t> frozen_;
  bool full_ = false;
  std::vector<StencilTable> tables_;
  std::vector<int> active_;
};

struct RunStats {
  int iterations = 0;
  bool converged = false;
};

template <class PassFn>
RunStats iterate(const SolverConfig& cfg, std::vector<double>& residuals, PassFn&& pass) {
  for (int p = 1; p <= cfg.max_iters; ++p) {
    const double change = pass();
    residuals.push_back(change);
    if (change <= cfg.tol) return {p - 1, true};
  }
  return {cfg.max_iters, false};
}

template <class PassFn>
void iterate_into(SolveResult& res, const SolverConfig& cfg, PassFn&& pass) {
  const RunStats st = iterate(cfg, res.residuals, pass);
  res.iterations = st.iterations;
  res.converged = st.converged;
}

std::vector<RotationDir2> rescale(const std::vector<RotationDir2>& rots, const Grid2& g) {
  std::vector<RotationDir2> out;
  out.reserve(rots.size());
  for (const auto& r : rots) out.push_back(make_rotation2(r.ihat, r.jhat, g.dx(), g.dy()));
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("solver: tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
  if (!(init_value > 0.0)) throw std::invalid_argument("solver: init_value must be positive");
  if (!(weno_eps > 0.0)) throw std::invalid_argument("solver: weno_eps must be positive");
  if (const auto* r = std::get_if<RotatedScheme>(&scheme); r && r->rotations.empty()) {
    throw std::invalid_argument("solver: rotated scheme needs at least one rotation");
  }
  if (const auto* r = std::get_if<RotatedRandomScheme>(&scheme)) {
    if (r->pool.empty()) throw std::invalid_argument("solver: random rotation pool is empty");
    if (r->k < 1 || static_cast<std::size_t>(r->k) > r->pool.size()) {
      throw std::invalid_argument("solver: random rotation count must be in [1, pool size]");
    }
  }
}

int required_ghost(const Scheme& scheme) {
  auto widest = [](const std::vector<RotationDir2>& rots) {
    int m = 1;
    for (const auto& r : rots) m = std::max({m, r.ihat, r.jhat});
    return m;
  };
  if (std::holds_alternative<WenoScheme>(scheme)) return 2;
  if (const auto* r = std::get_if<RotatedScheme>(&scheme)) return widest(r->rotations);
  if (const auto* r = std::get_if<RotatedRandomScheme>(&scheme)) return widest(r->pool);
  return 1;
}

std::optional<double> basic_update(const Field2& field, const ControlProblem& problem, int i, int j,
                                   const Control& a) {
  const Grid2& g = field.grid();
  check_interior(g, i, j);
  const Vec3 x = g.point(i, j);
  const RawStencil s = detail::basic_stencil2(problem.dynamics(x, a), g.dx(), g.dy(), detail::offsets_for(g));
  const auto idx = g.index(i, j);
  double out;
  if (!detail::eval_raw(s, problem.running_cost(x), [&](std::ptrdiff_t o) { return field[idx + o]; }, out)) {
    return std::nullopt;
  }
  return out;
}

std::optional<double> rotated_update(const Field2& field, const ControlProblem& problem, int i, int j,
                                     const Control& a, const RotationDir2& rot) {
  const Grid2& g = field.grid();
  check_interior(g, i, j);
  check_rotation(g, rot);
  const RotationDir2 scaled = make_rotation2(rot.ihat, rot.jhat, g.dx(), g.dy());
  const Vec3 x = g.point(i, j);
  const RawStencil s = detail::rotated_stencil2(problem.dynamics(x, a), scaled, detail::offsets_for(g));
  const auto idx = g.index(i, j);
  double out;
  if (!detail::eval_raw(s, problem.running_cost(x), [&](std::ptrdiff_t o) { return field[idx + o]; }, out)) {
    return std::nullopt;
  }
  return out;
}

std::optional<WenoDerivatives> weno_derivatives(const Field2& field, int i, int j, double eps) {
  const Grid2& g = field.grid();
  check_interior(g, i, j);
  if (g.ghost() < 2) throw std::invalid_argument("WENO derivatives need ghost >= 2");
  WenoAt d{};
  if (!weno_at(g, field.values().data() + g.index(i, j), eps, d)) return std::nullopt;
  return WenoDerivatives{d.px_plus, d.px_minus, d.py_plus, d.py_minus};
}

std::optional<double> weno_update(const Field2& field, const ControlProblem& problem, int i, int j,
                                  const Control& a, double eps) {
  const Grid2& g = field.grid();
  check_interior(g, i, j);
  if (g.ghost() < 2) throw std::invalid_argument("WENO update needs ghost >= 2");
  const double* v = field.values().data() + g.index(i, j);
  WenoAt d{};
  if (!weno_at(g, v, eps, d)) return basic_update(field, problem, i, j, a);
  const Vec3 x = g.point(i, j);
  const RawStencil s = detail::basic_stencil2(problem.dynamics(x, a), g.dx(), g.dy(), detail::offsets_for(g));
  double out;
  if (!detail::eval_raw(s, problem.running_cost(x), WenoFetch{v, g.stride_x(), g.dx(), g.dy(), d}, out)) {
    return std::nullopt;
  }
  return out;
}

SolveResult sweep_solve(const ControlProblem& problem, const Grid2& grid_in, const SolverConfig& config) {
  problem.validate();
  config.validate();
  if (problem.dim != 2) throw std::invalid_argument("sweep_solve: problem is not two-dimensional");
  const bool weno = std::holds_alternative<WenoScheme>(config.scheme);
  const bool rotated = std::holds_alternative<RotatedScheme>(config.scheme) ||
                       std::holds_alternative<RotatedRandomScheme>(config.scheme);
  if (rotated && !grid_in.is_square()) {
    throw std::invalid_argument("sweep_solve: rotated schemes require a square grid (dx == dy)");
  }
  if (weno && problem.orientation == Orientation::Max) {
    throw std::invalid_argument("sweep_solve: the WENO scheme supports min-type problems only");
  }

  const int ghost = std::max(grid_in.ghost(), required_ghost(config.scheme));
  SolveResult res{Field2(grid_in.with_ghost(ghost), detail::field_orientation(problem)), 0, {}, false};
  const Grid2& grid = res.field.grid();

  std::vector<RotationDir2> rotations;
  if (const auto* r = std::get_if<RotatedScheme>(&config.scheme)) rotations = rescale(r->rotations, grid);
  if (const auto* r = std::get_if<RotatedRandomScheme>(&config.scheme)) rotations = rescale(r->pool, grid);

  Sweeper2 sweeper(problem, res.field, rotations, config.init_value);

  if (const auto* rr = std::get_if<RotatedRandomScheme>(&config.scheme)) {
    std::mt19937_64 rng(rr->seed);
    std::vector<int> pool(rotations.size());
    std::iota(pool.begin(), pool.end(), 1);
    iterate_into(res, config, [&] {
      std::vector<int> active{0};
      std::sample(pool.begin(), pool.end(), std::back_inserter(active), rr->k, rng);
      sweeper.set_active(std::move(active));
      return sweeper.pass();
    });
    return res;
  }

  if (weno) {
    // The seed's residuals are not reported; iterations count WENO sweeps only.
    std::vector<double> seed_residuals;
    const RunStats seed = iterate(config, seed_residuals, [&] { return sweeper.pass(); });
    if (!seed.converged) {
      res.iterations = seed.iterations;
      res.residuals = std::move(seed_residuals);
      return res;
    }
    iterate_into(res, config, [&] { return sweeper.weno_pass(config.weno_eps); });
    return res;
  }

  iterate_into(res, config, [&] { return sweeper.pass(); });
  return res;
}

}  // namespace hjsweep
