#pragma once

#include "pampa/mood.hpp"
#include "pampa/scheme_high.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace pampa {

struct StepControl {
  double cfl = 0.3;
  double t_final = 0.0;
  long max_steps = 10'000'000;
  std::optional<double> fixed_dt;
};

struct DiagnosticsRow {
  double t;
  double dt;
  int flagged_elements;
  int flagged_points;
  double mass_total;
  double htheta_total;
};

/// cfl * min_E r_E / lambda_E with r_E the inradius and lambda_E the
/// largest |nu.n| + c over the element's points and average and its unit
/// edge normals. Infinity when every lambda_E is zero.
double compute_dt(const Discretization& disc, const SolutionField& field, double cfl);

/// sum |E| (h, h theta) over all elements.
std::pair<double, double> conserved_totals(const Mesh& mesh, const SolutionField& field);

/// Drives guarded SSP-RK3 steps from t = 0 to StepControl::t_final.
class Solver {
 public:
  /// Called after landing exactly on each requested output time, with the
  /// limiter flags of the last step.
  using Checkpoint =
      std::function<void(double t, const SolutionField& field, const FlagState& flags)>;

  Solver(const Discretization& disc, SolutionField initial, StepControl control,
         MoodOptions mood = {});

  [[nodiscard]] double time() const { return t_; }
  [[nodiscard]] long steps() const { return steps_; }
  [[nodiscard]] const SolutionField& field() const { return field_; }
  [[nodiscard]] const FlagState& last_flags() const { return flags_; }
  [[nodiscard]] const std::vector<DiagnosticsRow>& diagnostics() const { return diagnostics_; }

  /// One step of at most dt_max. Returns the step taken.
  double step(double dt_max);

  /// Runs to t_final. Output times outside (t, t_final] are ignored.
  void run(std::span<const double> output_times = {}, const Checkpoint& on_output = {});

 private:
  const Discretization* disc_;
  SolutionField field_;
  StepControl control_;
  MoodOptions mood_;
  Workspace ws_;
  FlagState flags_;
  double t_ = 0.0;
  long steps_ = 0;
  std::vector<DiagnosticsRow> diagnostics_;
};

}  // namespace pampa
