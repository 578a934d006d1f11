// Scenario-level acceptance checks. Prints one PASS/FAIL line per
// criterion and exits nonzero if any fails.
//
//   acceptance [--only N] [unit test binaries...]
//
// Criterion 8 runs the given unit binaries; the scenario criteria follow.

#include "pampa/cases.hpp"
#include "pampa/io/gmsh.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace {

using namespace pampa;

const std::filesystem::path kMeshes = std::filesystem::path(PAMPA_DATA_DIR) / "meshes";

struct Verdict {
  bool pass;
  std::string detail;
};

Mesh mesh(const std::string& name) { return io::load_mesh(kMeshes / name); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Largest L1 or max-norm drift of the listed components over averages and points.
double worst(const ErrorReport& r, std::initializer_list<int> components) {
  double w = 0.0;
  for (int k : components) {
    w = std::max({w, r.averages.l1[k], r.averages.linf[k], r.points.l1[k], r.points.linf[k]});
  }
  return w;
}

DriftReport drift(const std::string& scenario, const std::string& mesh_name, double t_final,
                  WbMode mode = WbMode::Adaptive) {
  const Problem p(builtin_scenario(scenario), mesh(mesh_name), SchemeOptions{mode});
  RunOptions options;
  options.t_final = t_final;
  return steady_state_check(p, options);
}

Verdict lake_at_rest() {
  auto t0 = std::chrono::steady_clock::now();
  const double full = worst(drift("ex3", "humps_lc1.msh", 20.0).drift, {0, 1});
  const double full_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const double desk = worst(drift("ex3", "humps_lc2.msh", 2.0).drift, {0, 1});
  const double desk_s = seconds_since(t0);
  return {full <= 1e-10 && full_s <= 300.0 && desk <= 1e-10 && desk_s <= 10.0,
          fmt("ex3 t=20 drift %.3e in %.1f s; desk t=2 drift %.3e in %.1f s (tol 1e-10, 300 s, 10 s)",
              full, full_s, desk, desk_s)};
}

Verdict isobaric() {
  const Problem p(builtin_scenario("ex6"), mesh("humps_lc1.msh"));
  const auto& rules = p.discretization().edge_rules();
  const bool lobatto = std::all_of(rules.begin(), rules.end(),
                                   [](EdgeRuleKind k) { return k == EdgeRuleKind::Lobatto3; });
  Vec4 scale = Vec4::Zero();
  for (const Vec4& a : p.initial().averages) scale = scale.cwiseMax(a.cwiseAbs());
  RunOptions options;
  options.t_final = 2.0;
  const ErrorReport r = steady_state_check(p, options).drift;
  bool pass = lobatto;
  std::string detail;
  for (int k : {0, 3}) {
    const double d = worst(r, {k});
    const double tol = 1e-12 + 1e-11 * scale[k];
    pass = pass && d <= tol;
    detail += fmt("%s drift %.3e (tol %.3e); ", k == 0 ? "h" : "h theta", d, tol);
  }
  return {pass, detail + (lobatto ? "all edges Lobatto3" : "some edges not Lobatto3")};
}

Verdict contrast() {
  const double wb3 = worst(drift("ex3", "humps_lc1.msh", 20.0).drift, {0, 1});
  const double lob = worst(drift("ex3", "humps_lc1.msh", 20.0, WbMode::LobattoOnly).drift, {0, 1});
  const double wb6 = worst(drift("ex6", "humps_lc1.msh", 2.0).drift, {0, 3});
  const double leg = worst(drift("ex6", "humps_lc1.msh", 2.0, WbMode::LegendreOnly).drift, {0, 3});
  const bool pass = lob >= 1e-6 && lob >= 1e4 * wb3 && leg >= 1e-6 && leg >= 1e4 * wb6;
  return {pass, fmt("ex3 lobatto_only %.3e vs WB %.3e; ex6 legendre_only %.3e vs WB %.3e "
                    "(need >= 1e-6 and >= 1e4 x WB)",
                    lob, wb3, leg, wb6)};
}

Verdict steady_vortex() {
  std::vector<Mesh> meshes;
  for (const char* n : {"vortex_lc1.0.msh", "vortex_lc0.5.msh", "vortex_lc0.25.msh",
                        "vortex_lc0.15.msh"}) {
    meshes.push_back(mesh(n));
  }
  const auto rows = convergence_study(builtin_scenario("ex1"), std::move(meshes), {}, {});
  const ConvergenceRow& last = rows.back();
  double lo = INFINITY, hi = -INFINITY;
  for (int k : {0, 1, 2}) {
    for (double r : {last.rate_averages[k], last.rate_points[k]}) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  const double finest = last.errors.averages.l1[0];
  const bool pass = lo >= 2.5 && hi <= 3.3 && finest >= 7e-7 && finest <= 3e-6;
  return {pass, fmt("last-refinement rates in [%.3f, %.3f] (need [2.5, 3.3]); "
                    "finest h average L1 %.3e (need [7e-7, 3e-6])",
                    lo, hi, finest)};
}

Verdict traveling_vortex() {
  std::vector<Mesh> meshes;
  for (const char* n : {"vortex_lc0.5.msh", "vortex_lc0.35.msh", "vortex_lc0.25.msh"}) {
    meshes.push_back(mesh(n));
  }
  RunOptions options;
  options.mood.dmp = false;
  const auto rows = convergence_study(builtin_scenario("ex2"), std::move(meshes), {}, options);
  const ConvergenceRow& a = rows.front();
  const ConvergenceRow& b = rows.back();
  double lo = INFINITY;
  for (int k : {0, 1, 2}) {
    lo = std::min(lo, std::log(a.errors.averages.l1[k] / b.errors.averages.l1[k]) /
                          std::log(a.size_averages / b.size_averages));
    lo = std::min(lo, std::log(a.errors.points.l1[k] / b.errors.points.l1[k]) /
                          std::log(a.size_points / b.size_points));
  }
  return {lo >= 2.5, fmt("order over two refinements (%d to %d elements) %.3f (need >= 2.5)",
                         a.elements, b.elements, lo)};
}

bool admissible(const Vec4& u) {
  return u.allFinite() && u[0] >= kDepthFloor && u[3] / u[0] >= kTemperatureFloor;
}

struct DamBreak {
  bool admissible = true;
  std::vector<int> checkpoint_flags;
};

DamBreak dam_break(const std::string& scenario) {
  const Scenario s = builtin_scenario(scenario);
  const Problem p(s, mesh(s.default_mesh));
  StepControl control;
  control.t_final = s.t_final;
  Solver solver(p.discretization(), p.initial(), control);
  std::vector<double> stops(s.checkpoints.begin(), s.checkpoints.end());
  stops.push_back(s.t_final);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
  DamBreak out;
  for (double stop : stops) {
    while (stop - solver.time() > 1e-12 * stop) {
      solver.step(stop - solver.time());
      const SolutionField& f = solver.field();
      for (const Vec4& a : f.averages) out.admissible = out.admissible && admissible(a);
      for (const Vec4& v : f.points) {
        out.admissible = out.admissible && admissible(from_vars(p.variables(), v));
      }
    }
    out.checkpoint_flags.push_back(solver.last_flags().flagged_elements);
  }
  return out;
}

Verdict robustness() {
  const DamBreak ex5 = dam_break("ex5");
  const DamBreak ex9 = dam_break("ex9");
  // ex5 stops at 0.447 and 0.69.
  const int early = ex5.checkpoint_flags.front();
  const int late = ex5.checkpoint_flags.back();
  const bool pass = ex5.admissible && ex9.admissible && early > 0 && late == 0;
  return {pass, fmt("ex5 admissible %s, ex9 admissible %s; ex5 flags %d at t=0.447 (need > 0), "
                    "%d at t=0.69 (need 0)",
                    ex5.admissible ? "yes" : "no", ex9.admissible ? "yes" : "no", early, late)};
}

Verdict perturbation() {
  const Scenario s = builtin_scenario("ex4");
  // Everything further than the fastest wave from the bump's effective
  // radius is untouched in exact arithmetic.
  const Vec2 centre(0.8, 0.8);
  const double radius = 0.5 + std::sqrt(s.g) * s.t_final;
  auto deviation = [&](WbMode mode, bool outside_only) {
    const Problem p(s, mesh(s.default_mesh), SchemeOptions{mode});
    const RunResult r = run(p, {});
    const SolutionField ref = p.project(s.background);
    const Mesh& m = p.mesh();
    double d = 0.0;
    for (int e = 0; e < m.element_count(); ++e) {
      if (outside_only && (m.centroid(e) - centre).norm() <= radius) continue;
      d = std::max(d, std::abs(r.field.averages[e][0] - ref.averages[e][0]));
    }
    for (int i = 0; i < m.dof_count(); ++i) {
      if (outside_only && (m.dof_position(i) - centre).norm() <= radius) continue;
      const double h = from_vars(p.variables(), r.field.points[i])[0];
      d = std::max(d, std::abs(h - from_vars(p.variables(), ref.points[i])[0]));
    }
    return d;
  };
  const double wb = deviation(WbMode::Adaptive, true);
  const double lob = deviation(WbMode::LobattoOnly, false);
  return {wb <= 2e-4 && lob > 1e-3,
          fmt("WB deviation outside r=%.3f: %.3e (need <= 2e-4); lobatto_only max %.3e "
              "(need > 1e-3)",
              radius, wb, lob)};
}

Verdict unit_suites(const std::vector<std::string>& binaries) {
  if (binaries.empty()) return {false, "no unit binaries given"};
  std::string detail;
  bool pass = true;
  for (const std::string& b : binaries) {
    const int rc = std::system(("\"" + b + "\" > /dev/null 2>&1").c_str());
    pass = pass && rc == 0;
    detail += std::filesystem::path(b).filename().string() + (rc == 0 ? " ok; " : " failed; ");
  }
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  std::vector<std::string> binaries;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      binaries.push_back(a);
    }
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"lake at rest", lake_at_rest},
      {"isobaric steady state", isobaric},
      {"non-well-balanced contrast", contrast},
      {"steady vortex convergence", steady_vortex},
      {"traveling vortex convergence", traveling_vortex},
      {"dam break robustness", robustness},
      {"perturbation resolvability", perturbation},
      {"unit and property suites", [&] { return unit_suites(binaries); }},
  };

  // The unit suites gate the scenario runs.
  std::vector<int> order{8, 1, 2, 3, 4, 5, 6, 7};
  if (only != 0) order = {only};
  int failures = 0;
  for (int n : order) {
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    const auto& [name, check] = criteria[n - 1];
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%s %d %s: %s [%.0f s]\n", v.pass ? "PASS" : "FAIL", n, name.c_str(),
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!v.pass) {
      ++failures;
      if (n == 8 && only == 0) break;
    }
  }
  return failures == 0 ? 0 : 1;
}
