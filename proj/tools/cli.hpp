#pragma once

#include "pampa/cases.hpp"
#include "pampa/io/config.hpp"

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace pampa::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,      // bad arguments or config
  kInput = 3,      // unreadable or malformed input, unwritable output
  kNumerical = 4,  // the solver failed
};

/// Runs the command line `args` (without the program name). Errors go to
/// `err` as "error: <category>: <message>", one line per problem.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// $PAMPA_DATA_DIR, or the source tree's data directory.
std::filesystem::path data_dir();

/// `name` as given if it exists, otherwise under data_dir()/meshes.
std::filesystem::path mesh_path(const std::string& name);

}  // namespace pampa::cli
