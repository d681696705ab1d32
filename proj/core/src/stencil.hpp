#pragma once

// Upwind stencils in "weighted average" form. Every update rule used by the
// sweepers produces, for one control, a candidate
//
//   phi* = (r + sum_l w_l * phi[idx + off_l]) / sum_l w_l,   w_l = |fbar_l| / ds_l,
//
// so a single evaluator covers the basic, rotated and 3D rules. Terms with a
// zero weight are dropped, which keeps 0 * inf out of the arithmetic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "hjsweep/grid.hpp"
#include "hjsweep/rotation.hpp"

namespace hjsweep::detail {

constexpr int kMaxTerms = 3;

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

struct RawStencil {
  int n = 0;
  std::ptrdiff_t off[kMaxTerms]{};
  double w[kMaxTerms]{};

  void add(std::ptrdiff_t o, double weight) {
    if (weight == 0.0) return;
    off[n] = o;
    w[n] = weight;
    ++n;
  }
};

/// Evaluates one stencil; false means "no candidate".
template <class Fetch>
inline bool eval_raw(const RawStencil& s, double r, Fetch&& fetch, double& out) {
  if (s.n == 0) return false;
  double num = r;
  double den = 0.0;
  for (int l = 0; l < s.n; ++l) {
    const double v = fetch(s.off[l]);
    if (!std::isfinite(v)) return false;
    num += s.w[l] * v;
    den += s.w[l];
  }
  out = num / den;
  return std::isfinite(out);
}

// Linear offset of a lattice step (di, dj, dk). On a periodic third axis the
// step is wrapped relative to slab k.
struct LatticeOffsets {
  std::ptrdiff_t sx = 0, sy = 1, sz = 0;
  int k = 0;
  int nk = 0;
  bool periodic = false;

  std::ptrdiff_t operator()(int di, int dj, int dk) const {
    int step = dk;
    if (periodic && dk != 0) {
      int kk = (k + dk) % nk;
      if (kk < 0) kk += nk;
      step = kk - k;
    }
    return di * sx + dj * sy + static_cast<std::ptrdiff_t>(step) * sz;
  }
};

inline LatticeOffsets offsets_for(const Grid2& g) { return {g.stride_x(), Grid2::stride_y(), 0, 0, 0, false}; }

inline LatticeOffsets offsets_for(const Grid3& g, int k) {
  return {g.stride_x(), g.stride_y(), Grid3::stride_z(), k, g.nodes_z(), g.periodic_z()};
}

// Components this small relative to |f| are rounding noise such as
// cos(pi/2); keeping them would couple the update to an unrelated neighbour.
constexpr double kSnap = 1e-12;

inline double snap(double c, double scale) { return std::abs(c) <= kSnap * scale ? 0.0 : c; }

inline double max_abs(double a, double b, double c = 0.0) {
  return std::max({std::abs(a), std::abs(b), std::abs(c)});
}

inline RawStencil basic_stencil2(const Vec3& fin, double dx, double dy, const LatticeOffsets& o) {
  const double sc = max_abs(fin[0], fin[1]);
  const double f[2] = {snap(fin[0], sc), snap(fin[1], sc)};
  RawStencil s;
  s.add(o(sign_of(f[0]), 0, 0), std::abs(f[0]) / dx);
  s.add(o(0, sign_of(f[1]), 0), std::abs(f[1]) / dy);
  return s;
}

inline RawStencil rotated_stencil2(const Vec3& f, const RotationDir2& rot, const LatticeOffsets& o) {
  // Projecting onto the integer lattice vectors keeps exact zeros exact.
  const double len = std::hypot(static_cast<double>(rot.ihat), static_cast<double>(rot.jhat));
  const double sc = max_abs(f[0], f[1]);
  const double f1 = snap((rot.ihat * f[0] + rot.jhat * f[1]) / len, sc);
  const double f2 = snap((-rot.jhat * f[0] + rot.ihat * f[1]) / len, sc);
  const int s1 = sign_of(f1);
  const int s2 = sign_of(f2);
  RawStencil s;
  s.add(o(s1 * rot.ihat, s1 * rot.jhat, 0), std::abs(f1) / rot.ds);
  s.add(o(-s2 * rot.jhat, s2 * rot.ihat, 0), std::abs(f2) / rot.ds);
  return s;
}

inline RawStencil basic_stencil3(const Vec3& fin, const Vec3& h, const LatticeOffsets& o) {
  const double sc = max_abs(fin[0], fin[1], fin[2]);
  const Vec3 f{snap(fin[0], sc), snap(fin[1], sc), snap(fin[2], sc)};
  RawStencil s;
  s.add(o(sign_of(f[0]), 0, 0), std::abs(f[0]) / h[0]);
  s.add(o(0, sign_of(f[1]), 0), std::abs(f[1]) / h[1]);
  s.add(o(0, 0, sign_of(f[2])), std::abs(f[2]) / h[2]);
  return s;
}

inline RawStencil rotated_stencil3(const Vec3& f, const RotationDir3& rot, const LatticeOffsets& o) {
  const double sc = max_abs(f[0], f[1], f[2]);
  RawStencil s;
  for (int l = 0; l < 3; ++l) {
    const auto& u = rot.unit[l];
    const double fb = snap(u[0] * f[0] + u[1] * f[1] + u[2] * f[2], sc);
    const int sg = sign_of(fb);
    const auto& a = rot.axis[l];
    s.add(o(sg * a[0], sg * a[1], sg * a[2]), std::abs(fb) / rot.spacing[l]);
  }
  return s;
}

/// Stencils sharing the same neighbour offsets, so neighbours are read once
/// and the min over controls is a tight loop.
struct StencilGroup {
  struct Entry {
    double w[kMaxTerms];
    double inv;  // 1 / sum w
  };
  struct Line {
    double m, b;
  };

  int n = 0;
  std::ptrdiff_t off[kMaxTerms]{};
  std::vector<Entry> entries;

  // n == 1: candidate = phi0 + r * inv, minimised by the smallest inv.
  double min_inv = 0.0;
  // n == 2 with r > 0: candidate = phi1 + r * (b + m * t), t = (phi0 - phi1) / r,
  // minimised on the lower envelope of the lines b + m t.
  std::vector<Line> hull;
  std::vector<double> breaks;
};

class StencilTable {
 public:
  static constexpr std::size_t kEnvelopeMin = 8;

  void add(const RawStencil& raw) {
    if (raw.n == 0) return;
    RawStencil s = raw;
    // canonical term order so equal offset sets share a group
    for (int a = 1; a < s.n; ++a) {
      for (int b = a; b > 0 && s.off[b] < s.off[b - 1]; --b) {
        std::swap(s.off[b], s.off[b - 1]);
        std::swap(s.w[b], s.w[b - 1]);
      }
    }
    StencilGroup* g = nullptr;
    for (auto& cand : groups_) {
      if (cand.n == s.n && std::equal(s.off, s.off + s.n, cand.off)) {
        g = &cand;
        break;
      }
    }
    if (!g) {
      groups_.emplace_back();
      g = &groups_.back();
      g->n = s.n;
      std::copy(s.off, s.off + s.n, g->off);
    }
    StencilGroup::Entry e{};
    double den = 0.0;
    for (int l = 0; l < s.n; ++l) {
      e.w[l] = s.w[l];
      den += s.w[l];
    }
    e.inv = 1.0 / den;
    g->entries.push_back(e);
  }

  void finalize() {
    for (auto& g : groups_) {
      if (g.n == 1) {
        g.min_inv = g.entries.front().inv;
        for (const auto& e : g.entries) g.min_inv = std::min(g.min_inv, e.inv);
      } else if (g.n == 2 && g.entries.size() >= kEnvelopeMin) {
        build_envelope(g);
      }
    }
  }

  const std::vector<StencilGroup>& groups() const { return groups_; }
  bool empty() const { return groups_.empty(); }

 private:
  static void build_envelope(StencilGroup& g) {
    std::vector<StencilGroup::Line> lines;
    lines.reserve(g.entries.size());
    for (const auto& e : g.entries) lines.push_back({e.w[0] * e.inv, e.inv});
    // decreasing slope: the first line wins as t -> -inf
    std::sort(lines.begin(), lines.end(), [](const auto& a, const auto& b) {
      return a.m > b.m || (a.m == b.m && a.b < b.b);
    });
    auto& h = g.hull;
    for (const auto& L : lines) {
      if (!h.empty() && h.back().m == L.m) continue;
      while (h.size() >= 2) {
        const auto& l1 = h[h.size() - 2];
        const auto& l2 = h.back();
        const double x12 = (l2.b - l1.b) / (l1.m - l2.m);
        const double x13 = (L.b - l1.b) / (l1.m - L.m);
        if (x13 <= x12) {
          h.pop_back();
        } else {
          break;
        }
      }
      h.push_back(L);
    }
    g.breaks.clear();
    for (std::size_t q = 0; q + 1 < h.size(); ++q) {
      g.breaks.push_back((h[q + 1].b - h[q].b) / (h[q].m - h[q + 1].m));
    }
  }

  std::vector<StencilGroup> groups_;
};

/// Lowers `best` to the smallest candidate of the table (min-type problems).
template <class Fetch>
inline void eval_table_min(const StencilTable& table, double r, Fetch&& fetch, double& best) {
  for (const auto& g : table.groups()) {
    double v[kMaxTerms];
    bool ok = true;
    for (int l = 0; l < g.n; ++l) {
      v[l] = fetch(g.off[l]);
      if (!std::isfinite(v[l])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    double cand;
    if (g.n == 1 && r >= 0.0) {
      cand = v[0] + r * g.min_inv;
    } else if (g.n == 2 && r > 0.0 && !g.hull.empty()) {
      const double d = v[0] - v[1];
      const double t = d / r;
      const auto q = static_cast<std::size_t>(std::lower_bound(g.breaks.begin(), g.breaks.end(), t) -
                                              g.breaks.begin());
      const auto& L = g.hull[q];
      cand = v[1] + r * L.b + L.m * d;
    } else {
      cand = best;
      for (const auto& e : g.entries) {
        double num = r;
        for (int l = 0; l < g.n; ++l) num += e.w[l] * v[l];
        cand = std::min(cand, num * e.inv);
      }
    }
    if (cand < best) best = cand;
  }
}

/// Raises `best` to the largest candidate of the table (max-type problems).
template <class Fetch>
inline void eval_table_max(const StencilTable& table, double r, Fetch&& fetch, double& best) {
  for (const auto& g : table.groups()) {
    double v[kMaxTerms];
    bool ok = true;
    for (int l = 0; l < g.n; ++l) {
      v[l] = fetch(g.off[l]);
      if (!std::isfinite(v[l])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const auto& e : g.entries) {
      double num = r;
      for (int l = 0; l < g.n; ++l) num += e.w[l] * v[l];
      best = std::max(best, num * e.inv);
    }
  }
}

}  // namespace hjsweep::detail
