#pragma once

#include "pampa/model.hpp"
#include "pampa/quadrature.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pampa::io {

/// One or more invalid config entries. what() lists every problem, one per
/// line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  [[nodiscard]] const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// Settings of one solver invocation.
///
/// Text form: one `key = value` per line, `#` starts a comment, blank lines
/// are ignored. Lists are comma separated. Booleans are `true` or `false`.
/// Unknown and repeated keys are errors.
///
///   scenario         name understood by builtin_scenario
///   mesh             mesh file; empty selects the scenario default
///   meshes           mesh files for convergence studies
///   wb_mode          adaptive | lobatto_only | legendre_only
///   variable_set     pmt | prim
///   mood, dmp        limiter toggles
///   cfl              (0, 1]
///   t_final          > 0; omitted keeps the scenario value
///   output_times     extra checkpoint times
///   output_interval  >= 0, checkpoint every this much time (0 disables)
///   output_dir       directory for VTK and CSV output
///   deterministic    fixed-order reductions
///   plateau_epsilon  >= 0, flatness threshold for the edge rule choice
///   max_steps        > 0
struct RunConfig {
  std::string scenario = "ex1";
  std::string mesh;
  std::vector<std::string> meshes;
  WbMode wb_mode = WbMode::Adaptive;
  VariableSet variable_set = VariableSet::Pmt;
  bool mood = true;
  bool dmp = true;
  double cfl = 0.3;
  std::optional<double> t_final;
  std::vector<double> output_times;
  double output_interval = 0.0;
  std::string output_dir = "output";
  bool deterministic = true;
  double plateau_epsilon = kPlateauEpsilon;
  long max_steps = 10'000'000;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig read_config(const std::filesystem::path& path);

/// Applies `key = value` settings in order on top of `config`. Throws
/// ConfigError listing every bad entry and every out-of-range result.
void apply_overrides(RunConfig& config,
                     std::span<const std::pair<std::string, std::string>> settings);

/// Every key in a fixed order; parse_config(serialize(c)) == c.
std::string serialize(const RunConfig& config);

/// Throws ConfigError listing every out-of-range value.
void validate(const RunConfig& config);

/// output_dir, or $PAMPA_OUTPUT_DIR when set and non-empty.
std::filesystem::path output_directory(const RunConfig& config);

std::string_view to_string(WbMode mode);
std::string_view to_string(VariableSet set);
/// Throw ConfigError for unknown names.
WbMode parse_wb_mode(std::string_view text);
VariableSet parse_variable_set(std::string_view text);

}  // namespace pampa::io
