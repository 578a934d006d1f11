#pragma once

#include "pampa/cases.hpp"
#include "pampa/fem_space.hpp"
#include "pampa/mesh.hpp"
#include "pampa/model.hpp"
#include "pampa/time_integrator.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pampa::io {

/// A file could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One snapshot for the VTK writer.
struct VtkFrame {
  const Mesh& mesh;
  const SolutionField& field;
  VariableSet variables;  // set of field.points
  const ScalarField& z;
  std::span<const char> element_flags;  // empty writes zeros
  double time = 0.0;
};

/// Legacy ASCII UNSTRUCTURED_GRID, one quadratic triangle (type 22) per
/// element. Point data: h, hu, hv, htheta, theta, p, Z. Cell data: the
/// averages, theta_E, p_E and the limiter flag.
void write_vtk(std::ostream& out, const VtkFrame& frame);
void write_vtk(const std::filesystem::path& path, const VtkFrame& frame);

/// POINTS section of a legacy VTK file (x, y only).
std::vector<Vec2> read_vtk_points(const std::filesystem::path& path);

/// RFC 4180 table with a header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> row);
  [[nodiscard]] const std::vector<std::string>& header() const { return header_; }
  [[nodiscard]] const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Shortest round-trip text of v; "NA" for NaN.
std::string format_number(double v);

/// Columns t, dt, flagged_elements, flagged_points, mass_total, htheta_total.
CsvTable diagnostics_table(std::span<const DiagnosticsRow> rows);

/// Averages and point-value tables with L1 errors and rates of h, hu, hv.
std::pair<CsvTable, CsvTable> convergence_tables(std::span<const ConvergenceRow> rows);

/// Averages and point-value tables with one row per labelled drift report:
/// L1 and max-norm of every conservative component.
std::pair<CsvTable, CsvTable> drift_tables(
    std::span<const std::pair<std::string, DriftReport>> reports);

/// Creates the parent directory if needed. Throws OutputError.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace pampa::io
