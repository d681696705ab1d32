#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "field_io.hpp"
#include "hjsweep/analysis.hpp"
#include "hjsweep/lf.hpp"
#include "hjsweep/problem.hpp"
#include "hjsweep/sweep2d.hpp"
#include "hjsweep/sweep3d.hpp"
#include "hjsweep/trajectory.hpp"

namespace hjsweep::cli {

namespace {

// Raised for option values that parse but cannot be combined.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

double parse_real(const std::string& s, const std::string& flag) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw UsageError(flag + ": '" + s + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

std::vector<double> parse_reals(const std::string& s, const std::string& flag, std::size_t n) {
  const auto parts = split(s, ',');
  if (parts.size() != n) throw UsageError(flag + ": expected " + std::to_string(n) + " comma-separated numbers");
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(parse_real(p, flag));
  return out;
}

/// "1,1;2,1;1,2"
std::vector<std::pair<int, int>> parse_pairs(const std::string& s) {
  std::vector<std::pair<int, int>> out;
  for (const auto& item : split(s, ';')) {
    const auto v = parse_reals(item, "--rotations", 2);
    if (v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
      throw UsageError("--rotations: '" + item + "' is not an integer pair");
    out.emplace_back(static_cast<int>(v[0]), static_cast<int>(v[1]));
  }
  if (out.empty()) throw UsageError("--rotations: empty list");
  return out;
}

struct Options {
  std::string problem = "eikonal";
  std::string p = "2";
  int K = 400;
  int grid = 0;
  std::string grid_nonsquare;
  std::string grids;
  std::string scheme = "basic";
  std::string rotations;
  int max_rot = 0;
  int rand_rot = 0;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int max_iters = 0;
  std::string out;
  std::optional<double> slice_theta;
  double W = 1.0;
  double d = 0.1;
  std::string target = "0.5,0.5,0";
  std::string start;
  double dt = 0.0;
  double t_max = 20.0;
  std::string vantage;
  std::vector<std::string> disks;
  std::string mask_out;
  std::string rules3 = "basic";
  std::string field_out;
};

bool is_3d(const Options& o) { return o.problem == "car" || o.problem == "eikonal3"; }

void add_problem_flags(CLI::App* app, Options& o) {
  app->add_option("--problem", o.problem, "eikonal | smooth | eikonal3 | car")
      ->check(CLI::IsMember({"eikonal", "smooth", "eikonal3", "car"}));
  app->add_option("--p", o.p, "eikonal norm: 1 | 2 | inf")->check(CLI::IsMember({"1", "2", "inf"}));
  app->add_option("--K", o.K, "control samples on the circle")->check(CLI::Range(4, 1 << 20));
  auto* nonsquare = app->add_option("--grid-nonsquare", o.grid_nonsquare, "I,J cells on [-1,1]^2");
  auto* rot = app->add_option("--rotations", o.rotations, "explicit rotation list, e.g. \"1,1;2,1;1,2\"");
  rot->excludes(nonsquare);
  auto* maxrot = app->add_option("--max-rot", o.max_rot, "all rotations with 1 <= i,j <= M")->check(CLI::Range(1, 64));
  maxrot->excludes(nonsquare);
  maxrot->excludes(rot);
  app->add_option("--rand-rot", o.rand_rot, "draw k rotations per iteration from --max-rot")
      ->check(CLI::PositiveNumber)
      ->needs(maxrot);
  app->add_option("--scheme", o.scheme, "basic | rotated | weno | lf")
      ->check(CLI::IsMember({"basic", "rotated", "weno", "lf"}));
  app->add_option("--seed", o.seed, "seed for randomly drawn rotations");
  app->add_option("--tol", o.tol, "L-infinity stopping tolerance")->check(CLI::PositiveNumber);
  app->add_option("--max-iters", o.max_iters, "iteration cap")->check(CLI::PositiveNumber);
  app->add_option("--W", o.W, "car: maximal angular velocity")->check(CLI::PositiveNumber);
  app->add_option("--d", o.d, "car: axle to centre distance")->check(CLI::NonNegativeNumber);
  app->add_option("--target", o.target, "car: target x,y,theta");
  app->add_option("--rules3", o.rules3, "3D eikonal: basic | axis | one-corner | all-corners")
      ->check(CLI::IsMember({"basic", "axis", "one-corner", "all-corners"}));
}

// ---------------------------------------------------------------- solving

struct Outcome {
  std::optional<Field2> field2;
  std::optional<Field3> field3;
  int iterations = 0;
  bool converged = false;
  std::optional<ErrorNorms> errors;
};

double tol_for(const Options& o) { return o.tol.value_or(o.problem == "car" ? 1e-4 : 1e-8); }

Grid2 grid2_for(const Options& o, int N) {
  if (!o.grid_nonsquare.empty()) {
    const auto v = parse_reals(o.grid_nonsquare, "--grid-nonsquare", 2);
    return Grid2({-1, 1, -1, 1}, static_cast<int>(v[0]), static_cast<int>(v[1]), 1);
  }
  return square_grid(N);
}

Grid3 grid3_for(const Options& o, int N) {
  if (o.problem == "car") return Grid3({-1, 1, -1, 1, 0, 2 * std::numbers::pi}, N, N, N, 1, true);
  return Grid3({-1, 1, -1, 1, -1, 1}, N, N, N, 1);
}

Scheme scheme2_for(const Options& o, const Grid2& g) {
  if (o.scheme == "weno") {
    if (!o.rotations.empty() || o.max_rot) throw UsageError("--scheme weno: rotations cannot be combined with WENO");
    return WenoScheme{};
  }
  if (o.scheme == "basic") {
    if (!o.rotations.empty() || o.max_rot) throw UsageError("--scheme basic: rotations need --scheme rotated");
    return BasicScheme{};
  }
  if (!o.grid_nonsquare.empty()) throw UsageError("--grid-nonsquare: rotations need a square grid");
  if (!o.rotations.empty()) {
    RotatedScheme s;
    for (auto [i, j] : parse_pairs(o.rotations)) s.rotations.push_back(make_rotation2(i, j, g.dx(), g.dy()));
    return s;
  }
  if (!o.max_rot) throw UsageError("--scheme rotated: give --rotations or --max-rot");
  auto pool = enumerate_rotations(o.max_rot, g.dx(), g.dy());
  if (o.rand_rot) {
    if (o.rand_rot > static_cast<int>(pool.size()))
      throw UsageError("--rand-rot: larger than the " + std::to_string(pool.size()) + " available rotations");
    return RotatedRandomScheme{std::move(pool), o.rand_rot, o.seed};
  }
  return RotatedScheme{std::move(pool)};
}

std::vector<RotationDir3> rotations3_for(const Options& o, const Grid3& g) {
  std::vector<RotationDir3> rots;
  if (o.problem == "car") {
    if (o.scheme == "basic" || o.scheme == "lf") {
      if (!o.rotations.empty() || o.max_rot) throw UsageError("--scheme " + o.scheme + ": rotations need --scheme rotated");
      return rots;
    }
    if (o.scheme != "rotated") throw UsageError("--scheme: '" + o.scheme + "' is not available for the car");
    if (o.rand_rot) throw UsageError("--rand-rot: not available for 3D problems");
    std::vector<std::pair<int, int>> pairs;
    if (!o.rotations.empty()) {
      pairs = parse_pairs(o.rotations);
    } else if (o.max_rot) {
      for (const auto& r : enumerate_rotations(o.max_rot, g.dx(), g.dy())) pairs.emplace_back(r.ihat, r.jhat);
    } else {
      throw UsageError("--scheme rotated: give --rotations or --max-rot");
    }
    for (auto [i, j] : pairs) rots.push_back(rotation3_from_triple(i, j, 0, g, RotationMode::AxisFixedZ));
    return rots;
  }
  if (o.scheme != "basic") throw UsageError("--scheme: the 3D eikonal selects its rules with --rules3");
  if (o.rules3 == "basic") return rots;
  rots = edge_rotations(g);
  if (o.rules3 == "one-corner") rots.push_back(corner_rotation("+-+", g));
  if (o.rules3 == "all-corners")
    for (auto& r : corner_rotations(g)) rots.push_back(r);
  return rots;
}

ControlProblem problem2_for(const Options& o, const Grid2& g) {
  if (o.problem == "smooth") return smooth_eikonal_problem(g, {0, 0, 0}, o.K);
  return eikonal_problem(parse_norm(o.p), g, {0, 0, 0}, o.K);
}

CarParams car_params_for(const Options& o) {
  const auto t = parse_reals(o.target, "--target", 3);
  return CarParams{o.W, o.d, {t[0], t[1], t[2]}};
}

Outcome solve_one(const Options& o, int N) {
  Outcome out;
  if (!is_3d(o)) {
    const Grid2 g = grid2_for(o, N);
    const ControlProblem prob = problem2_for(o, g);
    SolveResult res{Field2(g, FieldOrientation::MinInfInit), 0, {}, false};
    if (o.scheme == "lf") {
      if (!o.rotations.empty() || o.max_rot) throw UsageError("--scheme lf: rotations need --scheme rotated");
      LFConfig cfg;
      cfg.tol = tol_for(o);
      if (o.max_iters) cfg.max_iters = o.max_iters;
      res = lf_solve(prob, g, cfg);
    } else {
      SolverConfig cfg;
      cfg.tol = tol_for(o);
      if (o.max_iters) cfg.max_iters = o.max_iters;
      cfg.scheme = scheme2_for(o, g);
      res = sweep_solve(prob, g, cfg);
    }
    out.iterations = res.iterations;
    out.converged = res.converged;
    if (prob.exact) out.errors = error_norms(res.field, prob.exact);
    out.field2 = std::move(res.field);
    return out;
  }

  if (!o.grid_nonsquare.empty()) throw UsageError("--grid-nonsquare: only for 2D problems");
  const Grid3 g = grid3_for(o, N);
  const ControlProblem prob =
      o.problem == "car" ? car_problem(car_params_for(o), g) : eikonal3_problem(parse_norm(o.p), g);
  SolveResult3 res{Field3(g, FieldOrientation::MinInfInit), 0, {}, false};
  if (o.scheme == "lf") {
    if (o.problem != "car") throw UsageError("--scheme lf: available for eikonal and car problems");
    LFConfig cfg;
    cfg.tol = tol_for(o);
    if (o.max_iters) cfg.max_iters = o.max_iters;
    res = lf_solve3(prob, g, cfg);
  } else {
    SolverConfig3 cfg;
    cfg.tol = tol_for(o);
    if (o.max_iters) cfg.max_iters = o.max_iters;
    cfg.rotations = rotations3_for(o, g);
    res = sweep_solve3(prob, g, cfg);
  }
  out.iterations = res.iterations;
  out.converged = res.converged;
  if (prob.exact) out.errors = error_norms(res.field, prob.exact);
  out.field3 = std::move(res.field);
  return out;
}

int slab_for(const Grid3& g, double theta) {
  return g.nearest_node({g.xmin(), g.ymin(), theta}).k;
}

// ---------------------------------------------------------------- subcommands

int cmd_solve(const Options& o, std::ostream& out) {
  if (o.grid <= 0 && o.grid_nonsquare.empty()) throw UsageError("--grid: required (or --grid-nonsquare)");
  const Outcome r = solve_one(o, o.grid);
  if (!o.out.empty()) {
    if (r.field2) {
      if (o.slice_theta) throw UsageError("--slice-theta: only for 3D problems");
      io::export_field(*r.field2, o.out);
    } else if (o.slice_theta) {
      io::export_slice(*r.field3, slab_for(r.field3->grid(), *o.slice_theta), o.out);
    } else {
      io::export_field(*r.field3, o.out);
    }
  }
  out << "iters=" << r.iterations;
  if (r.errors) out << ", Linf=" << sci(r.errors->linf) << ", L1=" << sci(r.errors->l1);
  if (!r.converged) out << ", converged=no";
  out << '\n';
  return r.converged ? kOk : kNotConverged;
}

std::string order_cell(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

int cmd_converge(const Options& o, std::ostream& out) {
  if (o.grids.empty()) throw UsageError("--grids: required");
  if (!o.grid_nonsquare.empty()) throw UsageError("--grid-nonsquare: not available for converge");
  std::vector<int> ns;
  for (const auto& s : split(o.grids, ',')) {
    const double v = parse_real(s, "--grids");
    if (v < 2 || v != std::floor(v)) throw UsageError("--grids: '" + s + "' is not a cell count >= 2");
    ns.push_back(static_cast<int>(v));
  }
  for (std::size_t q = 1; q < ns.size(); ++q)
    if (ns[q] <= ns[q - 1]) throw UsageError("--grids: resolutions must be strictly increasing");

  const ConvergenceTable t = convergence_table(
      [&](int N) {
        const Outcome r = solve_one(o, N);
        if (!r.errors) throw UsageError("--problem " + o.problem + ": no exact solution to compare against");
        return RunOutcome{*r.errors, r.iterations, r.converged};
      },
      ns);

  char line[256];
  std::snprintf(line, sizeof line, "%6s %12s %8s %12s %8s %6s %9s\n", "N", "Linf", "order", "L1", "order", "iters",
                "seconds");
  out << line;
  bool all = true;
  for (const auto& row : t.rows) {
    std::snprintf(line, sizeof line, "%6d %12s %8s %12s %8s %6d %9.3f%s\n", row.resolution, sci(row.linf).c_str(),
                  order_cell(row.linf_order).c_str(), sci(row.l1).c_str(), order_cell(row.l1_order).c_str(),
                  row.iterations, row.seconds, row.converged ? "" : "  (not converged)");
    out << line;
    all = all && row.converged;
  }
  if (!o.out.empty()) {
    std::ofstream os(o.out);
    if (!os) throw std::runtime_error(o.out + ": cannot open for writing");
    os << "N,linf,linf_order,l1,l1_order,iters,converged,seconds\n";
    for (const auto& row : t.rows)
      os << row.resolution << ',' << sci(row.linf) << ',' << order_cell(row.linf_order) << ',' << sci(row.l1) << ','
         << order_cell(row.l1_order) << ',' << row.iterations << ',' << (row.converged ? 1 : 0) << ','
         << row.seconds << '\n';
  }
  return all ? kOk : kNotConverged;
}

int cmd_trajectory(Options o, std::ostream& out) {
  if (o.problem != "car") throw UsageError("--problem: trajectories need the car problem");
  if (o.start.empty()) throw UsageError("--start: required");
  if (o.grid <= 0) throw UsageError("--grid: required");
  const auto s = parse_reals(o.start, "--start", 3);
  const CarParams params = car_params_for(o);
  const Outcome r = solve_one(o, o.grid);
  if (!o.field_out.empty()) io::export_field(*r.field3, o.field_out);
  const Vec3 start{s[0], s[1], s[2]};
  const Trajectory traj = extract_trajectory(*r.field3, start, params, o.dt, o.t_max);
  if (!o.out.empty()) {
    std::ofstream os(o.out);
    if (!os) throw std::runtime_error(o.out + ": cannot open for writing");
    os << "t,x,y,theta,v,omega\n";
    char line[256];
    for (const auto& q : traj.samples) {
      std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%.10g,%g,%g\n", q.t, q.x, q.y, q.theta, q.v, q.omega);
      os << line;
    }
  }
  out << "iters=" << r.iterations << ", status=" << to_string(traj.status) << ", time=" << sci(traj.arrival_time())
      << ", phi_start=" << sci(interpolate(*r.field3, start)) << ", samples=" << traj.samples.size() << '\n';
  if (!r.converged || !traj.reached()) return kNotConverged;
  return kOk;
}

int cmd_visibility(const Options& o, std::ostream& out) {
  if (o.vantage.empty()) throw UsageError("--vantage: required");
  if (o.grid <= 0) throw UsageError("--grid: required");
  const auto v = parse_reals(o.vantage, "--vantage", 2);
  std::vector<Disk> disks;
  for (const auto& s : o.disks) {
    const auto d = parse_reals(s, "--disk", 3);
    if (!(d[2] > 0.0)) throw UsageError("--disk: radius must be positive");
    disks.push_back({d[0], d[1], d[2]});
  }
  const Grid2 g = square_grid(o.grid);
  std::function<double(const Vec3&)> sdf = [](const Vec3&) { return -1.0; };
  if (!disks.empty()) sdf = disks_sdf(disks);
  const ControlProblem prob = visibility_problem(sdf, {v[0], v[1], 0.0}, g);
  SolverConfig cfg;
  cfg.tol = tol_for(o);
  if (o.max_iters) cfg.max_iters = o.max_iters;
  const SolveResult r = sweep_solve(prob, g, cfg);
  if (!o.out.empty()) io::export_field(r.field, o.out);
  Field2 mask(r.field.grid(), FieldOrientation::MinInfInit);
  long visible = 0, total = 0;
  for (int i = 0; i <= g.I(); ++i)
    for (int j = 0; j <= g.J(); ++j) {
      const bool vis = r.field(i, j) <= 0.0;
      mask(i, j) = vis ? 1.0 : 0.0;
      visible += vis;
      ++total;
    }
  if (!o.mask_out.empty()) io::export_field(mask, o.mask_out);
  char frac[32];
  std::snprintf(frac, sizeof frac, "%.4f", static_cast<double>(visible) / static_cast<double>(total));
  out << "iters=" << r.iterations << ", visible=" << frac << (r.converged ? "" : ", converged=no") << '\n';
  return r.converged ? kOk : kNotConverged;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fast sweeping solver for steady Hamilton-Jacobi-Bellman equations", "hjsweep"};
  app.require_subcommand(1);
  Options o;

  auto* solve = app.add_subcommand("solve", "solve one problem and write the field");
  add_problem_flags(solve, o);
  solve->add_option("--grid", o.grid, "N cells per axis")->check(CLI::Range(2, 100000));
  solve->add_option("--out", o.out, "field file");
  solve->add_option("--slice-theta", o.slice_theta, "3D: write only the slab nearest this third coordinate");

  auto* converge = app.add_subcommand("converge", "convergence table over several resolutions");
  add_problem_flags(converge, o);
  converge->add_option("--grids", o.grids, "comma-separated cell counts, e.g. 50,100,200,400")->required();
  converge->add_option("--out", o.out, "CSV copy of the table");

  auto* traj = app.add_subcommand("trajectory", "solve the car problem and integrate an optimal path");
  add_problem_flags(traj, o);
  traj->add_option("--grid", o.grid, "N cells per axis")->check(CLI::Range(2, 100000));
  traj->add_option("--start", o.start, "start x,y,theta")->required();
  traj->add_option("--dt", o.dt, "time step (default dx/2)")->check(CLI::NonNegativeNumber);
  traj->add_option("--t-max", o.t_max, "integration horizon")->check(CLI::PositiveNumber);
  traj->add_option("--out", o.out, "trajectory CSV");
  traj->add_option("--field-out", o.field_out, "field file of the solved value function");

  auto* vis = app.add_subcommand("visibility", "visibility from a vantage point around disk obstacles");
  vis->add_option("--grid", o.grid, "N cells per axis")->check(CLI::Range(2, 100000));
  vis->add_option("--vantage", o.vantage, "vantage x,y")->required();
  vis->add_option("--disk", o.disks, "obstacle disk cx,cy,R (repeatable)");
  vis->add_option("--tol", o.tol, "L-infinity stopping tolerance")->check(CLI::PositiveNumber);
  vis->add_option("--max-iters", o.max_iters, "iteration cap")->check(CLI::PositiveNumber);
  vis->add_option("--out", o.out, "field file");
  vis->add_option("--mask-out", o.mask_out, "visibility mask file (1 visible, 0 occluded)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out);
    if (converge->parsed()) return cmd_converge(o, out);
    if (traj->parsed()) {
      if (o.problem == "eikonal") o.problem = "car";
      return cmd_trajectory(o, out);
    }
    return cmd_visibility(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace hjsweep::cli
