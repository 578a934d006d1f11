#include "cli.hpp"

#include "pampa/io/gmsh.hpp"
#include "pampa/io/output.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <utility>

#ifndef PAMPA_DATA_DIR
#define PAMPA_DATA_DIR "data"
#endif

namespace pampa::cli {
namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

constexpr Flag kFlags[] = {
    {"--scenario", "scenario", "built-in scenario (ex1..ex9 or a full name)"},
    {"--mesh", "mesh", "mesh file"},
    {"--meshes", "meshes", "comma-separated mesh files for convergence studies"},
    {"--wb-mode", "wb_mode", "adaptive | lobatto_only | legendre_only"},
    {"--variables", "variable_set", "pmt | prim"},
    {"--mood", "mood", "true | false"},
    {"--dmp", "dmp", "true | false"},
    {"--cfl", "cfl", "CFL number in (0, 1]"},
    {"--t-final", "t_final", "final time"},
    {"--output-times", "output_times", "comma-separated checkpoint times"},
    {"--output-interval", "output_interval", "checkpoint spacing in time"},
    {"--output-dir", "output_dir", "output directory"},
    {"--deterministic", "deterministic", "true | false"},
    {"--plateau-epsilon", "plateau_epsilon", "flat-bottom threshold"},
    {"--max-steps", "max_steps", "step limit"},
};

struct Invocation {
  std::string config_file;
  std::vector<std::string> values = std::vector<std::string>(std::size(kFlags));
  std::vector<CLI::Option*> options;
};

void add_flags(CLI::App& cmd, Invocation& inv) {
  cmd.add_option("-c,--config", inv.config_file, "config file");
  for (std::size_t i = 0; i < std::size(kFlags); ++i) {
    inv.options.push_back(cmd.add_option(kFlags[i].name, inv.values[i], kFlags[i].help));
  }
}

io::RunConfig resolve_config(const Invocation& inv) {
  io::RunConfig config = inv.config_file.empty() ? io::RunConfig{} : io::read_config(inv.config_file);
  Overrides settings;
  for (std::size_t i = 0; i < std::size(kFlags); ++i) {
    if (inv.options[i]->count() > 0) settings.emplace_back(kFlags[i].key, inv.values[i]);
  }
  io::apply_overrides(config, settings);
  return config;
}

SchemeOptions scheme_options(const io::RunConfig& c) {
  return {c.wb_mode, c.variable_set, c.plateau_epsilon};
}

RunOptions run_options(const io::RunConfig& c, double t_final) {
  RunOptions o;
  o.mood.enabled = c.mood;
  o.mood.dmp = c.dmp;
  o.cfl = c.cfl;
  o.t_final = c.t_final;
  o.max_steps = c.max_steps;
  o.output_times = c.output_times;
  if (c.output_interval > 0.0) {
    for (long k = 1; k * c.output_interval < t_final; ++k) o.output_times.push_back(k * c.output_interval);
  }
  return o;
}

Mesh load_for(const io::RunConfig& c, const Scenario& s) {
  return io::load_mesh(mesh_path(c.mesh.empty() ? s.default_mesh : c.mesh));
}

std::vector<std::string> study_meshes(const io::RunConfig& c, const Scenario& s) {
  if (!c.meshes.empty()) return c.meshes;
  if (s.name.rfind("ex1", 0) == 0) {
    return {"vortex_lc1.0.msh", "vortex_lc0.5.msh", "vortex_lc0.25.msh", "vortex_lc0.15.msh"};
  }
  if (s.name.rfind("ex2", 0) == 0) {
    return {"vortex_lc0.5.msh", "vortex_lc0.35.msh", "vortex_lc0.25.msh"};
  }
  throw io::ConfigError({"meshes: required for scenario " + s.name});
}

std::filesystem::path prepare_output(const io::RunConfig& c, const Scenario& s) {
  const std::filesystem::path dir = io::output_directory(c);
  std::ofstream meta = io::open_output(dir / (s.name + ".cfg"));
  meta << "# time integrator: ssp-rk3\n" << io::serialize(c);
  return dir;
}

void write_pair(const std::pair<io::CsvTable, io::CsvTable>& tables,
                const std::filesystem::path& stem, std::ostream& out) {
  tables.first.write(std::filesystem::path(stem.string() + "_averages.csv"));
  tables.second.write(std::filesystem::path(stem.string() + "_points.csv"));
  out << "# cell averages\n";
  tables.first.write(out);
  out << "# point values\n";
  tables.second.write(out);
}

int command_run(const io::RunConfig& c, std::ostream& out) {
  const Scenario scenario = builtin_scenario(c.scenario);
  const Problem problem(scenario, load_for(c, scenario), scheme_options(c));
  const std::filesystem::path dir = prepare_output(c, scenario);
  const double t_final = c.t_final.value_or(scenario.t_final);
  auto snapshot = [&](double t, const SolutionField& field, std::span<const char> flags) {
    const io::VtkFrame frame{problem.mesh(), field, problem.variables(),
                             problem.discretization().z(), flags, t};
    io::write_vtk(dir / (scenario.name + "_t" + io::format_number(t) + ".vtk"), frame);
  };
  snapshot(0.0, problem.initial(), {});
  const RunResult result =
      run(problem, run_options(c, t_final),
          [&](double t, const SolutionField& field, const FlagState& flags) {
            snapshot(t, field, flags.elements);
          });
  io::diagnostics_table(result.diagnostics).write(dir / (scenario.name + "_diagnostics.csv"));
  int max_flags = 0;
  for (const DiagnosticsRow& r : result.diagnostics) max_flags = std::max(max_flags, r.flagged_elements);
  const auto [m0, h0] = conserved_totals(problem.mesh(), problem.initial());
  const auto [m1, h1] = conserved_totals(problem.mesh(), result.field);
  out << scenario.name << ": " << result.steps << " steps to t = " << io::format_number(result.t)
      << " on " << problem.mesh().element_count() << " elements\n"
      << "mass change " << io::format_number(m1 - m0) << ", htheta change "
      << io::format_number(h1 - h0) << ", max flagged elements " << max_flags << '\n'
      << "output in " << dir.string() << '\n';
  return kOk;
}

int command_convergence(const io::RunConfig& c, std::ostream& out) {
  const Scenario scenario = builtin_scenario(c.scenario);
  std::vector<Mesh> meshes;
  for (const std::string& m : study_meshes(c, scenario)) meshes.push_back(io::load_mesh(mesh_path(m)));
  const auto rows = convergence_study(scenario, std::move(meshes), scheme_options(c),
                                      run_options(c, c.t_final.value_or(scenario.t_final)));
  const std::filesystem::path dir = prepare_output(c, scenario);
  write_pair(io::convergence_tables(rows), dir / (scenario.name + "_convergence"), out);
  return kOk;
}

DriftReport drift(const io::RunConfig& c, const Scenario& s, const Mesh& mesh, WbMode mode) {
  SchemeOptions scheme = scheme_options(c);
  scheme.wb_mode = mode;
  const Problem problem(s, mesh, scheme);
  return steady_state_check(problem, run_options(c, c.t_final.value_or(s.t_final)));
}

int command_steady(const io::RunConfig& c, std::ostream& out) {
  const Scenario scenario = builtin_scenario(c.scenario);
  const Mesh mesh = load_for(c, scenario);
  std::vector<std::pair<std::string, DriftReport>> reports;
  reports.emplace_back(std::string(io::to_string(c.wb_mode)), drift(c, scenario, mesh, c.wb_mode));
  const std::filesystem::path dir = prepare_output(c, scenario);
  write_pair(io::drift_tables(reports), dir / (scenario.name + "_drift"), out);
  return kOk;
}

int command_compare(const io::RunConfig& c, std::ostream& out) {
  const Scenario scenario = builtin_scenario(c.scenario);
  const Mesh mesh = load_for(c, scenario);
  // Collocation is exact for flat bottoms only, Legendre for lakes at rest
  // only; the forced variant is the one that breaks this scenario's balance.
  const ScalarField z = project_function(scenario.bathymetry, mesh, scenario.average_init);
  bool sloped = false;
  for (int e = 0; e < mesh.element_count() && !sloped; ++e) {
    sloped = !plateau_check(mesh, z, e, c.plateau_epsilon);
  }
  const WbMode forced = sloped ? WbMode::LobattoOnly : WbMode::LegendreOnly;
  std::vector<std::pair<std::string, DriftReport>> reports;
  reports.emplace_back("WB", drift(c, scenario, mesh, WbMode::Adaptive));
  reports.emplace_back("non-WB " + std::string(io::to_string(forced)), drift(c, scenario, mesh, forced));
  const std::filesystem::path dir = prepare_output(c, scenario);
  write_pair(io::drift_tables(reports), dir / (scenario.name + "_compare"), out);
  return kOk;
}

void report(std::ostream& err, std::string_view category, const std::string& message) {
  std::istringstream lines(message);
  std::string line;
  bool any = false;
  while (std::getline(lines, line)) {
    err << "error: " << category << ": " << line << '\n';
    any = true;
  }
  if (!any) err << "error: " << category << '\n';
}

}  // namespace

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("PAMPA_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return PAMPA_DATA_DIR;
}

std::filesystem::path mesh_path(const std::string& name) {
  const std::filesystem::path given(name);
  if (std::filesystem::exists(given)) return given;
  return data_dir() / "meshes" / given;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Well-balanced PAMPA solver for the Ripa model", "pampa");
  app.require_subcommand(1);
  struct Command {
    const char* name;
    const char* help;
    int (*body)(const io::RunConfig&, std::ostream&);
  };
  const Command commands[] = {
      {"run", "run a scenario and write VTK checkpoints and diagnostics", command_run},
      {"convergence", "error and rate tables over a mesh sequence", command_convergence},
      {"steady-check", "drift of a steady state in one quadrature mode", command_steady},
      {"compare", "drift of the balanced scheme against a forced unbalanced one", command_compare},
  };
  std::vector<Invocation> invocations(std::size(commands));
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    subs.push_back(app.add_subcommand(commands[i].name, commands[i].help));
    add_flags(*subs.back(), invocations[i]);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    report(err, "usage", e.what());
    return kUsage;
  }

  try {
    for (std::size_t i = 0; i < std::size(commands); ++i) {
      if (subs[i]->parsed()) return commands[i].body(resolve_config(invocations[i]), out);
    }
    report(err, "usage", "no subcommand");
    return kUsage;
  } catch (const io::ConfigError& e) {
    report(err, "config", e.what());
    return kUsage;
  } catch (const InputError& e) {
    report(err, "input", e.what());
    return kInput;
  } catch (const io::OutputError& e) {
    report(err, "io", e.what());
    return kInput;
  } catch (const MeshError& e) {
    report(err, "input", e.what());
    return kInput;
  } catch (const SolverError& e) {
    report(err, "numerical", e.what());
    return kNumerical;
  } catch (const InvariantDomainError& e) {
    report(err, "numerical", e.what());
    return kNumerical;
  } catch (const HyperbolicityError& e) {
    report(err, "numerical", e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    report(err, "internal", e.what());
    return kInternal;
  }
}

}  // namespace pampa::cli
