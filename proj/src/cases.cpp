#include "pampa/cases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace pampa {

namespace {

constexpr double kGravitySwe = 9.812;
constexpr double kGravityRipa = 1.0;

double dist2(const Vec2& x, double a, double b) {
  return (x.x() - a) * (x.x() - a) + (x.y() - b) * (x.y() - b);
}

Vec4 state(double h, double u, double v, double theta) { return {h, h * u, h * v, h * theta}; }

double zero_bottom(const Vec2&) { return 0.0; }

// Vortex of the accuracy tests, centred at c, on top of a uniform drift.
Vec4 vortex(const Vec2& x, const Vec2& c, const Vec2& drift, double z, double g) {
  const double r2 = (x - c).squaredNorm();
  const double e = std::exp(1.0 - r2);
  const double h = 1.0 - e * e / (4.0 * g) - z;
  const Vec2 rel = x - c;
  return state(h, drift.x() + rel.y() * e, drift.y() - rel.x() * e, 1.0);
}

Scenario ex1() {
  Scenario s;
  s.name = "ex1_steady_vortex";
  s.domain = {-10, 10, -10, 10};
  s.g = kGravitySwe;
  s.t_final = 1.0;
  s.bathymetry = [](const Vec2& x) { return 0.2 * std::exp(0.5 * (1.0 - x.squaredNorm())); };
  s.initial = [b = s.bathymetry, g = s.g](const Vec2& x) {
    return vortex(x, Vec2::Zero(), Vec2::Zero(), b(x), g);
  };
  s.exact = [f = s.initial](const Vec2& x, double) { return f(x); };
  s.background = s.initial;
  s.boundary = BoundaryKind::Dirichlet;
  s.default_mesh = "vortex_lc1.0.msh";
  return s;
}

const Vec2 kDrift(1.0, std::sqrt(2.0) / 2.0);

Scenario ex2_flat() {
  Scenario s;
  s.name = "ex2_vortex_flat";
  s.domain = {-10, 10, -10, 10};
  s.g = kGravitySwe;
  s.t_final = 5.0;
  s.bathymetry = zero_bottom;
  s.exact = [g = s.g](const Vec2& x, double t) {
    return vortex(x, t * kDrift, kDrift, 0.0, g);
  };
  s.initial = [e = s.exact](const Vec2& x) { return e(x, 0.0); };
  s.boundary = BoundaryKind::Dirichlet;
  s.checkpoints = {0.39, 1.0};
  s.default_mesh = "vortex_lc0.5.msh";
  return s;
}

Scenario ex2_bump() {
  Scenario s = ex2_flat();
  s.name = "ex2_vortex_bump";
  s.bathymetry = [](const Vec2& x) { return 0.2 * std::exp(0.5 - 2.0 * dist2(x, 2.0, 2.0)); };
  // Same depth as the flat case: the bump is felt as a change of free surface.
  s.initial = [g = s.g](const Vec2& x) { return vortex(x, Vec2::Zero(), kDrift, 0.0, g); };
  // The far field is the flat-bottom solution.
  s.boundary_state = s.exact;
  s.exact = nullptr;
  s.t_final = 1.0;
  s.checkpoints = {0.39, 1.0};
  return s;
}

Scenario ex3() {
  Scenario s;
  s.name = "ex3_three_humps";
  s.domain = {0, 40, 0, 40};
  s.g = kGravitySwe;
  s.t_final = 20.0;
  s.bathymetry = [](const Vec2& x) {
    return std::max({0.0, 1.0 - std::sqrt(dist2(x, 10, 11)) / 8.0,
                     1.0 - 0.3 * std::sqrt(dist2(x, 10, 31)),
                     1.0 - 0.4 * std::sqrt(dist2(x, 27, 20))});
  };
  s.initial = [b = s.bathymetry](const Vec2& x) { return state(4.0 - b(x), 0, 0, 1); };
  s.background = s.initial;
  s.default_mesh = "humps_lc1.msh";
  return s;
}

Scenario ex4() {
  Scenario s;
  s.name = "ex4_perturbation";
  s.domain = {0, 2, 0, 2};
  s.g = kGravitySwe;
  s.t_final = 0.1;
  s.bathymetry = [](const Vec2& x) { return 0.8 * std::exp(-50.0 * dist2(x, 1, 1)); };
  s.initial = [b = s.bathymetry](const Vec2& x) {
    return state(1.0 - b(x) + 1e-4 * std::exp(-20.0 * dist2(x, 0.8, 0.8)), 0, 0, 1);
  };
  s.background = [b = s.bathymetry](const Vec2& x) { return state(1.0 - b(x), 0, 0, 1); };
  s.default_mesh = "bump_lc0.1.msh";
  return s;
}

Scenario ex5() {
  Scenario s;
  s.name = "ex5_dam_break";
  s.domain = {0, 50, 0, 50};
  s.g = kGravitySwe;
  s.t_final = 0.69;
  s.bathymetry = zero_bottom;
  s.initial = [](const Vec2& x) {
    return state(dist2(x, 25, 25) <= 121.0 ? 10.0 : 1.0, 0, 0, 1);
  };
  s.checkpoints = {0.447, 0.69};
  s.default_mesh = "dam_lc0.5.msh";
  return s;
}

Vec4 isobaric(const Vec2& x) {
  const double r2 = dist2(x, 30, 30);
  if (r2 <= 16.0) return state(2.0 * std::exp(-0.05 * r2), 0, 0, std::exp(0.1 * r2));
  return state(2.0 * std::exp(-0.8), 0, 0, std::exp(1.6));
}

Scenario ex6() {
  Scenario s;
  s.name = "ex6_isobaric";
  s.domain = {0, 40, 0, 40};
  s.g = kGravityRipa;
  s.t_final = 2.0;
  s.bathymetry = zero_bottom;
  s.initial = isobaric;
  s.background = isobaric;
  s.average_init = AverageInit::Centroid;
  s.default_mesh = "humps_lc1.msh";
  return s;
}

Scenario ex6_perturbed() {
  Scenario s = ex6();
  s.name = "ex6_isobaric_perturbed";
  s.t_final = 6.0;
  s.initial = [](const Vec2& x) {
    Vec4 u = isobaric(x);
    const double theta = u[3] / u[0];
    const double h = u[0] + 0.005 * std::exp(-0.2 * dist2(x, 20, 20));
    return state(h, 0, 0, theta);
  };
  s.checkpoints = {4.3, 6.0};
  return s;
}

double lakes_bottom(const Vec2& x) {
  if (x.x() <= 0.0) return 0.5 * std::exp(-100.0 * dist2(x, -0.5, -0.5));
  return 0.6 * std::exp(-100.0 * dist2(x, 0.5, 0.5));
}

Scenario ex7() {
  Scenario s;
  s.name = "ex7_two_lakes";
  s.domain = {-1, 1, -1, 1};
  s.g = kGravityRipa;
  s.t_final = 0.12;
  s.bathymetry = lakes_bottom;
  s.initial = [](const Vec2& x) {
    const double z = lakes_bottom(x);
    if (x.squaredNorm() <= 0.25) return state(3.0 - z, 0, 0, 4.0 / 3.0);
    return state(2.0 - z, 0, 0, 3.0);
  };
  s.background = s.initial;
  s.default_mesh = "lakes_lc0.0315.msh";
  return s;
}

Scenario ex8() {
  Scenario s = ex7();
  s.name = "ex8_two_lakes_perturbed";
  s.t_final = 0.05;
  s.initial = [](const Vec2& x) {
    const double z = lakes_bottom(x);
    const double r2 = x.squaredNorm();
    if (r2 >= 0.01 && r2 <= 0.09) return state(3.1 - z, 0, 0, 4.0 / 3.0);
    if (r2 <= 0.25) return state(3.0 - z, 0, 0, 4.0 / 3.0);
    return state(2.0 - z, 0, 0, 3.0);
  };
  return s;
}

Scenario ex9() {
  Scenario s;
  s.name = "ex9_radial_dam_break";
  s.domain = {-1, 1, -1, 1};
  s.g = kGravityRipa;
  s.t_final = 0.15;
  s.bathymetry = zero_bottom;
  s.initial = [](const Vec2& x) {
    if (x.squaredNorm() <= 0.25) return state(2.0, 0, 0, 1.0);
    return state(1.0, 0, 0, 1.5);
  };
  s.default_mesh = "lakes_lc0.0315.msh";
  return s;
}

using Factory = Scenario (*)();

const std::map<std::string, Factory, std::less<>>& registry() {
  static const std::map<std::string, Factory, std::less<>> r{
      {"ex1_steady_vortex", ex1},       {"ex2_vortex_flat", ex2_flat},
      {"ex2_vortex_bump", ex2_bump},    {"ex3_three_humps", ex3},
      {"ex4_perturbation", ex4},        {"ex5_dam_break", ex5},
      {"ex6_isobaric", ex6},            {"ex6_isobaric_perturbed", ex6_perturbed},
      {"ex7_two_lakes", ex7},           {"ex8_two_lakes_perturbed", ex8},
      {"ex9_radial_dam_break", ex9}};
  return r;
}

const std::map<std::string, std::string, std::less<>>& aliases() {
  static const std::map<std::string, std::string, std::less<>> a{
      {"ex1", "ex1_steady_vortex"}, {"ex2", "ex2_vortex_flat"},
      {"ex3", "ex3_three_humps"},   {"ex4", "ex4_perturbation"},
      {"ex5", "ex5_dam_break"},     {"ex6", "ex6_isobaric"},
      {"ex7", "ex7_two_lakes"},     {"ex8", "ex8_two_lakes_perturbed"},
      {"ex9", "ex9_radial_dam_break"}};
  return a;
}

Vec4 to_cons(VariableSet set, const Vec4& v) { return fast::from_vars(set, v); }

void accumulate(Norms& n, const Vec4& diff, double weight) {
  const Vec4 a = diff.cwiseAbs();
  n.l1 += weight * a;
  n.linf = n.linf.cwiseMax(a);
}

}  // namespace

Scenario builtin_scenario(std::string_view name) {
  std::string key(name);
  if (auto a = aliases().find(key); a != aliases().end()) key = a->second;
  auto it = registry().find(key);
  if (it == registry().end()) throw InputError("unknown scenario '" + std::string(name) + "'");
  return it->second();
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

Problem::Problem(Scenario scenario, Mesh mesh, SchemeOptions options)
    : scenario_(std::move(scenario)), mesh_(std::make_unique<Mesh>(std::move(mesh))) {
  ScalarField z = project_function(scenario_.bathymetry, *mesh_, scenario_.average_init);
  Boundary boundary{scenario_.boundary,
                    scenario_.boundary_state ? scenario_.boundary_state : scenario_.exact};
  disc_ = std::make_unique<Discretization>(*mesh_, std::move(z), Params{scenario_.g}, options,
                                           std::move(boundary));
  initial_ = project(scenario_.initial);
  for (const Vec4& a : initial_.averages) check_conservative(a);
  for (const Vec4& p : initial_.points) check_conservative(to_cons(variables(), p));
}

SolutionField Problem::project(const std::function<Vec4(const Vec2&)>& f) const {
  SolutionField out = project_state(f, *mesh_, scenario_.average_init);
  for (Vec4& p : out.points) p = to_vars(variables(), p);
  return out;
}

RunResult run(const Problem& problem, const RunOptions& options,
              const Solver::Checkpoint& on_checkpoint) {
  StepControl control;
  control.cfl = options.cfl;
  control.t_final = options.t_final.value_or(problem.scenario().t_final);
  control.max_steps = options.max_steps;
  control.fixed_dt = options.fixed_dt;
  Solver solver(problem.discretization(), problem.initial(), control, options.mood);
  std::vector<double> times = problem.scenario().checkpoints;
  times.insert(times.end(), options.output_times.begin(), options.output_times.end());
  solver.run(times, on_checkpoint);
  return {solver.field(), solver.diagnostics(), solver.steps(), solver.time()};
}

ErrorReport error_norms(const Mesh& mesh, const SolutionField& field,
                        const SolutionField& reference, VariableSet set) {
  const auto ne = static_cast<std::size_t>(mesh.element_count());
  const auto nd = static_cast<std::size_t>(mesh.dof_count());
  if (field.averages.size() != ne || reference.averages.size() != ne ||
      field.points.size() != nd || reference.points.size() != nd) {
    throw InputError("error_norms: field does not match the mesh");
  }
  ErrorReport r;
  double area = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    const double w = mesh.element(static_cast<int>(e)).area;
    accumulate(r.averages, field.averages[e] - reference.averages[e], w);
    area += w;
  }
  r.averages.l1 /= area;
  double volume = 0.0;
  for (std::size_t s = 0; s < nd; ++s) {
    const double w = mesh.dual_volume(static_cast<int>(s));
    accumulate(r.points, to_cons(set, field.points[s]) - to_cons(set, reference.points[s]), w);
    volume += w;
  }
  r.points.l1 /= volume;
  return r;
}

std::pair<double, double> mesh_sizes(const Mesh& mesh) {
  double a = 0.0, p = 0.0;
  for (const Element& e : mesh.elements()) a = std::max(a, std::sqrt(e.area));
  for (double v : mesh.dual_volumes()) p = std::max(p, std::sqrt(v));
  return {a, p};
}

std::vector<ConvergenceRow> convergence_study(const Scenario& scenario, std::vector<Mesh> meshes,
                                              const SchemeOptions& scheme,
                                              const RunOptions& options) {
  if (meshes.size() < 3) throw InputError("convergence study needs at least three meshes");
  if (!scenario.exact) throw InputError("scenario '" + scenario.name + "' has no exact solution");
  std::vector<ConvergenceRow> rows;
  for (Mesh& mesh : meshes) {
    ConvergenceRow row{};
    row.elements = mesh.element_count();
    std::tie(row.size_averages, row.size_points) = mesh_sizes(mesh);
    if (!rows.empty() && !(row.size_averages < rows.back().size_averages)) {
      throw InputError("convergence study: mesh sizes must decrease");
    }
    Problem problem(scenario, std::move(mesh), scheme);
    RunResult result = run(problem, options);
    const double t = result.t;
    const SolutionField ref =
        problem.project([&](const Vec2& x) { return scenario.exact(x, t); });
    row.errors = error_norms(problem.mesh(), result.field, ref, problem.variables());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.rate_averages.setConstant(nan);
    row.rate_points.setConstant(nan);
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      for (int c = 0; c < 4; ++c) {
        auto rate = [](double e0, double e1, double h0, double h1) {
          if (!(e0 > 0.0) || !(e1 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
          return std::log(e0 / e1) / std::log(h0 / h1);
        };
        row.rate_averages[c] = rate(prev.errors.averages.l1[c], row.errors.averages.l1[c],
                                    prev.size_averages, row.size_averages);
        row.rate_points[c] = rate(prev.errors.points.l1[c], row.errors.points.l1[c],
                                  prev.size_points, row.size_points);
      }
    }
    rows.push_back(row);
  }
  return rows;
}

DriftReport steady_state_check(const Problem& problem, const RunOptions& options) {
  RunResult result = run(problem, options);
  DriftReport r;
  r.drift = error_norms(problem.mesh(), result.field, problem.initial(), problem.variables());
  r.steps = result.steps;
  r.t = result.t;
  for (const DiagnosticsRow& d : result.diagnostics) r.max_flags = std::max(r.max_flags, d.flagged_elements);
  return r;
}

Mesh rectangle_mesh(const Domain& d, int nx, int ny, double jitter, unsigned seed) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("rectangle_mesh: empty grid");
  const double dx = (d.x1 - d.x0) / nx, dy = (d.y1 - d.y0) / ny;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-jitter, jitter);
  std::vector<Vec2> v;
  v.reserve((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      Vec2 p(d.x0 + i * dx, d.y0 + j * dy);
      if (jitter > 0.0 && i > 0 && i < nx && j > 0 && j < ny) p += Vec2(u(rng) * dx, u(rng) * dy);
      v.push_back(p);
    }
  }
  std::vector<std::array<int, 3>> t;
  t.reserve(2 * nx * ny);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), e = id(i, j + 1);
      if ((i + j) % 2 == 0) {
        t.push_back({a, b, c});
        t.push_back({a, c, e});
      } else {
        t.push_back({a, b, e});
        t.push_back({b, c, e});
      }
    }
  }
  return Mesh::build(std::move(v), std::move(t));
}

}  // namespace pampa
