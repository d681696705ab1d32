#include "hjsweep/lf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sweep_common.hpp"

namespace hjsweep {
namespace {

inline bool all_finite(std::initializer_list<double> vs) {
  return std::all_of(vs.begin(), vs.end(), [](double v) { return std::isfinite(v); });
}

inline void extrapolate(double& edge, double v1, double v2) {
  edge = std::min(std::max(2.0 * v1 - v2, v2), edge);
}

Vec3 resolve_sigma(const LFConfig& cfg, const Hamiltonian& h) {
  Vec3 s = cfg.sigma;
  for (int l = 0; l < 3; ++l) {
    if (s[l] == 0.0) s[l] = h.sigma[l];
    if (!(s[l] > 0.0)) throw std::invalid_argument("lf: artificial viscosity must be positive");
  }
  return s;
}

const Hamiltonian& require_hamiltonian(const ControlProblem& p) {
  if (!p.hamiltonian) throw std::invalid_argument("lf: problem '" + p.name + "' has no Hamiltonian form");
  if (p.orientation != Orientation::Min) throw std::invalid_argument("lf: only min-type problems are supported");
  return *p.hamiltonian;
}

template <class ResultT, class PassFn>
void run(ResultT& res, const LFConfig& cfg, PassFn&& pass) {
  for (int p = 1; p <= cfg.max_iters; ++p) {
    const double change = pass();
    res.residuals.push_back(change);
    if (change <= cfg.tol) {
      res.iterations = p - 1;
      res.converged = true;
      return;
    }
  }
  res.iterations = cfg.max_iters;
  res.converged = false;
}

}  // namespace

void LFConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("lf: tol must be positive");
  if (max_iters < 1) throw std::invalid_argument("lf: max_iters must be >= 1");
  if (!(init_value > 0.0) || !std::isfinite(init_value)) {
    throw std::invalid_argument("lf: init_value must be positive and finite");
  }
  for (double s : sigma) {
    if (s < 0.0) throw std::invalid_argument("lf: artificial viscosity must be non-negative");
  }
}

std::optional<double> lf_update(const Field2& field, int i, int j, const Hamiltonian& hamiltonian, double r,
                                double sigma_x, double sigma_y) {
  const Grid2& g = field.grid();
  if (i < 0 || i > g.I() || j < 0 || j > g.J()) throw std::out_of_range("lf_update: node outside the grid");
  const double e = field(i + 1, j), w = field(i - 1, j), n = field(i, j + 1), s = field(i, j - 1);
  if (!all_finite({e, w, n, s})) return std::nullopt;
  const double dx = g.dx(), dy = g.dy();
  const Vec3 p{(e - w) / (2.0 * dx), (n - s) / (2.0 * dy), 0.0};
  const double num = r - hamiltonian.H(g.point(i, j), p) + sigma_x * (e + w) / (2.0 * dx) + sigma_y * (n + s) / (2.0 * dy);
  return num / (sigma_x / dx + sigma_y / dy);
}

SolveResult lf_solve(const ControlProblem& problem, const Grid2& grid, const LFConfig& config) {
  problem.validate();
  config.validate();
  if (problem.dim != 2) throw std::invalid_argument("lf_solve: problem is not two-dimensional");
  const Hamiltonian& ham = require_hamiltonian(problem);
  const Vec3 sigma = resolve_sigma(config, ham);

  SolveResult res{Field2(grid, FieldOrientation::MinInfInit), 0, {}, false};
  Field2& f = res.field;
  const Grid2& g = f.grid();
  detail::fill_nodes(f, config.init_value);
  std::vector<std::uint8_t> frozen;
  detail::apply_boundary(problem, f, frozen);

  const int I = g.I(), J = g.J();
  std::vector<double> r(g.storage_size(), 0.0);
  for (int i = 1; i < I; ++i)
    for (int j = 1; j < J; ++j) r[static_cast<std::size_t>(g.index(i, j))] = problem.running_cost(g.point(i, j));

  const double dx = g.dx(), dy = g.dy();
  const double cx = sigma[0] / (2.0 * dx), cy = sigma[1] / (2.0 * dy);
  const double denom = sigma[0] / dx + sigma[1] / dy;
  const auto sx = g.stride_x();
  double* v = f.values().data();

  auto frame = [&] {
    if (config.boundary != LFBoundary::Extrapolate) return;
    auto ext = [&](int i, int j, int i1, int j1, int i2, int j2) {
      const auto idx = g.index(i, j);
      if (frozen[static_cast<std::size_t>(idx)]) return;
      extrapolate(v[idx], v[g.index(i1, j1)], v[g.index(i2, j2)]);
    };
    for (int j = 0; j <= J; ++j) {
      ext(0, j, 1, j, 2, j);
      ext(I, j, I - 1, j, I - 2, j);
    }
    for (int i = 0; i <= I; ++i) {
      ext(i, 0, i, 1, i, 2);
      ext(i, J, i, J - 1, i, J - 2);
    }
  };

  std::vector<double> prev;
  run(res, config, [&] {
    prev.assign(f.values().begin(), f.values().end());
    for (int s = 0; s < 4; ++s) {
      const bool i_up = s < 2;
      const bool j_up = s == 0 || s == 3;
      for (int a = 1; a < I; ++a) {
        const int i = i_up ? a : I - a;
        for (int b = 1; b < J; ++b) {
          const int j = j_up ? b : J - b;
          const auto idx = g.index(i, j);
          if (frozen[static_cast<std::size_t>(idx)]) continue;
          const double e = v[idx + sx], w = v[idx - sx], n = v[idx + 1], so = v[idx - 1];
          const Vec3 p{(e - w) / (2.0 * dx), (n - so) / (2.0 * dy), 0.0};
          const double cand =
              (r[static_cast<std::size_t>(idx)] - ham.H(g.point(i, j), p) + cx * (e + w) + cy * (n + so)) / denom;
          if (cand < v[idx]) v[idx] = cand;
        }
      }
      frame();
    }
    return detail::linf_change2(g, prev, f.values());
  });
  return res;
}

BasicSolveResult<Field3> lf_solve3(const ControlProblem& problem, const Grid3& grid, const LFConfig& config) {
  problem.validate();
  config.validate();
  if (problem.dim != 3) throw std::invalid_argument("lf_solve3: problem is not three-dimensional");
  const Hamiltonian& ham = require_hamiltonian(problem);
  const Vec3 sigma = resolve_sigma(config, ham);

  BasicSolveResult<Field3> res{Field3(grid, FieldOrientation::MinInfInit), 0, {}, false};
  Field3& f = res.field;
  const Grid3& g = f.grid();
  detail::fill_nodes(f, config.init_value);
  std::vector<std::uint8_t> frozen;
  detail::apply_boundary(problem, f, frozen);

  const int I = g.I(), J = g.J(), NZ = g.nodes_z();
  const bool periodic = g.periodic_z();
  const int k_lo = periodic ? 0 : 1;
  const int k_hi = periodic ? NZ - 1 : g.K() - 1;

  std::vector<double> r(g.storage_size(), 0.0);
  for (int i = 1; i < I; ++i)
    for (int j = 1; j < J; ++j)
      for (int k = k_lo; k <= k_hi; ++k) r[static_cast<std::size_t>(g.index(i, j, k))] = problem.running_cost(g.point(i, j, k));

  const Vec3 h{g.dx(), g.dy(), g.dz()};
  const double denom = sigma[0] / h[0] + sigma[1] / h[1] + sigma[2] / h[2];
  const auto sx = g.stride_x(), sy = g.stride_y();
  double* v = f.values().data();

  auto frame = [&] {
    if (config.boundary != LFBoundary::Extrapolate) return;
    auto ext = [&](int i, int j, int k, int i1, int j1, int k1, int i2, int j2, int k2) {
      const auto idx = g.index(i, j, k);
      if (frozen[static_cast<std::size_t>(idx)]) return;
      extrapolate(v[idx], v[g.index(i1, j1, k1)], v[g.index(i2, j2, k2)]);
    };
    for (int j = 0; j <= J; ++j)
      for (int k = 0; k < NZ; ++k) {
        ext(0, j, k, 1, j, k, 2, j, k);
        ext(I, j, k, I - 1, j, k, I - 2, j, k);
      }
    for (int i = 0; i <= I; ++i)
      for (int k = 0; k < NZ; ++k) {
        ext(i, 0, k, i, 1, k, i, 2, k);
        ext(i, J, k, i, J - 1, k, i, J - 2, k);
      }
    if (!periodic) {
      for (int i = 0; i <= I; ++i)
        for (int j = 0; j <= J; ++j) {
          ext(i, j, 0, i, j, 1, i, j, 2);
          ext(i, j, g.K(), i, j, g.K() - 1, i, j, g.K() - 2);
        }
    }
  };

  std::vector<double> prev;
  run(res, config, [&] {
    prev.assign(f.values().begin(), f.values().end());
    for (int s = 0; s < 8; ++s) {
      const bool i_up = !(s & 4), j_up = !(s & 2), k_up = !(s & 1);
      for (int a = 1; a < I; ++a) {
        const int i = i_up ? a : I - a;
        for (int b = 1; b < J; ++b) {
          const int j = j_up ? b : J - b;
          for (int c = k_lo; c <= k_hi; ++c) {
            const int k = k_up ? c : k_hi - (c - k_lo);
            const auto idx = g.index(i, j, k);
            if (frozen[static_cast<std::size_t>(idx)]) continue;
            const double xp = v[idx + sx], xm = v[idx - sx], yp = v[idx + sy], ym = v[idx - sy];
            const double zp = v[g.index(i, j, g.wrap_k(k + 1))];
            const double zm = v[g.index(i, j, g.wrap_k(k - 1))];
            const Vec3 p{(xp - xm) / (2.0 * h[0]), (yp - ym) / (2.0 * h[1]), (zp - zm) / (2.0 * h[2])};
            const double num = r[static_cast<std::size_t>(idx)] - ham.H(g.point(i, j, k), p) +
                               sigma[0] * (xp + xm) / (2.0 * h[0]) + sigma[1] * (yp + ym) / (2.0 * h[1]) +
                               sigma[2] * (zp + zm) / (2.0 * h[2]);
            const double cand = num / denom;
            if (cand < v[idx]) v[idx] = cand;
          }
        }
      }
      frame();
    }
    return detail::linf_change3(g, prev, f.values());
  });
  return res;
}

}  // namespace hjsweep
