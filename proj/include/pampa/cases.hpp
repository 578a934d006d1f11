#pragma once

#include "pampa/fem_space.hpp"
#include "pampa/mesh.hpp"
#include "pampa/mood.hpp"
#include "pampa/scheme_high.hpp"
#include "pampa/time_integrator.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pampa {

struct Domain {
  double x0, x1, y0, y1;
};

struct Scenario {
  std::string name;
  Domain domain;
  double g;
  double t_final;
  std::function<double(const Vec2&)> bathymetry;
  /// Conservative initial state.
  std::function<Vec4(const Vec2&)> initial;
  BoundaryKind boundary = BoundaryKind::Extrapolation;
  /// Exact conservative solution, when known.
  StateFunction exact;
  /// Dirichlet data when it differs from the exact solution.
  StateFunction boundary_state;
  /// Reference state the run is compared against (the unperturbed steady
  /// state for perturbation tests).
  std::function<Vec4(const Vec2&)> background;
  std::vector<double> checkpoints;
  AverageInit average_init = AverageInit::Quadrature;
  /// File name of the default mesh under the data directory.
  std::string default_mesh;
};

/// Throws InputError for unknown names. Short aliases ex1..ex9 map to the
/// first variant of each example.
Scenario builtin_scenario(std::string_view name);
std::vector<std::string> scenario_names();

/// A scenario bound to a mesh with its discretization and initial field.
class Problem {
 public:
  Problem(Scenario scenario, Mesh mesh, SchemeOptions options = {});

  [[nodiscard]] const Scenario& scenario() const { return scenario_; }
  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] const Discretization& discretization() const { return *disc_; }
  [[nodiscard]] const SolutionField& initial() const { return initial_; }
  [[nodiscard]] VariableSet variables() const { return disc_->variables(); }

  /// Projection of a conservative state function, points in the evolved
  /// variable set.
  [[nodiscard]] SolutionField project(const std::function<Vec4(const Vec2&)>& f) const;

 private:
  Scenario scenario_;
  std::unique_ptr<Mesh> mesh_;
  std::unique_ptr<Discretization> disc_;
  SolutionField initial_;
};

struct RunOptions {
  MoodOptions mood;
  double cfl = 0.3;
  std::optional<double> t_final;
  std::optional<double> fixed_dt;
  long max_steps = 10'000'000;
  /// Checkpoints in addition to the scenario's own.
  std::vector<double> output_times;
};

struct RunResult {
  SolutionField field;
  std::vector<DiagnosticsRow> diagnostics;
  long steps = 0;
  double t = 0.0;
};

RunResult run(const Problem& problem, const RunOptions& options,
              const Solver::Checkpoint& on_checkpoint = {});

struct Norms {
  Vec4 l1 = Vec4::Zero();
  Vec4 linf = Vec4::Zero();
};

struct ErrorReport {
  Norms averages;
  Norms points;
};

/// Area- and dual-volume-weighted L1 and max-norm errors of the
/// conservative variables. Point values of both fields are in `set`.
/// Throws InputError if the fields do not match the mesh.
ErrorReport error_norms(const Mesh& mesh, const SolutionField& field,
                        const SolutionField& reference, VariableSet set);

/// max sqrt|E| and max sqrt|C_sigma|.
std::pair<double, double> mesh_sizes(const Mesh& mesh);

struct ConvergenceRow {
  int elements;
  double size_averages;
  double size_points;
  ErrorReport errors;
  /// Log-ratio rates against the previous row, NaN for the first row or
  /// when an error is zero.
  Vec4 rate_averages;
  Vec4 rate_points;
};

/// Runs the scenario on each mesh and compares with its exact solution at
/// the final time. Throws InputError for fewer than three meshes, no
/// exact solution, or mesh sizes that do not decrease.
std::vector<ConvergenceRow> convergence_study(const Scenario& scenario, std::vector<Mesh> meshes,
                                              const SchemeOptions& scheme,
                                              const RunOptions& options);

struct DriftReport {
  ErrorReport drift;
  long steps = 0;
  double t = 0.0;
  int max_flags = 0;
};

/// Runs to the final time and measures the deviation from the initial data.
DriftReport steady_state_check(const Problem& problem, const RunOptions& options);

/// Structured triangulation of a rectangle with alternating diagonals and
/// optional random interior vertex jitter (fraction of the cell size).
Mesh rectangle_mesh(const Domain& domain, int nx, int ny, double jitter = 0.0,
                    unsigned seed = 1);

}  // namespace pampa
