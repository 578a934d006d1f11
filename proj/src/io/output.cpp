#include "pampa/io/output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace pampa::io {
namespace {

void scalars(std::ostream& out, std::string_view name, const std::vector<double>& values) {
  out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : values) out << format_number(v) << '\n';
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void append_norms(std::vector<std::string>& row, const Norms& n) {
  for (int k = 0; k < 4; ++k) {
    row.push_back(format_number(n.l1[k]));
    row.push_back(format_number(n.linf[k]));
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw OutputError("cannot write " + path.string());
  return out;
}

void write_vtk(std::ostream& out, const VtkFrame& f) {
  const Mesh& mesh = f.mesh;
  const int nd = mesh.dof_count();
  const int ne = mesh.element_count();
  if (static_cast<int>(f.field.points.size()) != nd ||
      static_cast<int>(f.field.averages.size()) != ne ||
      static_cast<int>(f.z.points.size()) != nd) {
    throw std::invalid_argument("field does not match the mesh");
  }
  if (!f.element_flags.empty() && static_cast<int>(f.element_flags.size()) != ne) {
    throw std::invalid_argument("flag count does not match the mesh");
  }
  out << "# vtk DataFile Version 3.0\n";
  out << "pampa t=" << format_number(f.time) << '\n';
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nd << " double\n";
  for (int s = 0; s < nd; ++s) {
    const Vec2& x = mesh.dof_position(s);
    out << format_number(x.x()) << ' ' << format_number(x.y()) << " 0\n";
  }
  out << "CELLS " << ne << ' ' << 7 * ne << '\n';
  for (int e = 0; e < ne; ++e) {
    const auto& d = mesh.element(e).dofs;
    out << 6;
    for (int k = 0; k < 6; ++k) out << ' ' << d[k];
    out << '\n';
  }
  out << "CELL_TYPES " << ne << '\n';
  for (int e = 0; e < ne; ++e) out << "22\n";

  std::array<std::vector<double>, 7> pd;
  for (auto& v : pd) v.reserve(nd);
  for (int s = 0; s < nd; ++s) {
    const Vec4 u = fast::from_vars(f.variables, f.field.points[s]);
    for (int k = 0; k < 4; ++k) pd[k].push_back(u[k]);
    pd[4].push_back(u[3] / u[0]);
    pd[5].push_back(u[0] * u[3]);
    pd[6].push_back(f.z.points[s]);
  }
  out << "POINT_DATA " << nd << '\n';
  constexpr std::array<std::string_view, 7> point_names = {"h", "hu", "hv", "htheta",
                                                           "theta", "p", "Z"};
  for (int k = 0; k < 7; ++k) scalars(out, point_names[k], pd[k]);

  std::array<std::vector<double>, 7> cd;
  for (auto& v : cd) v.reserve(ne);
  for (int e = 0; e < ne; ++e) {
    const Vec4& a = f.field.averages[e];
    for (int k = 0; k < 4; ++k) cd[k].push_back(a[k]);
    cd[4].push_back(a[3] / a[0]);
    cd[5].push_back(a[0] * a[3]);
    cd[6].push_back(f.element_flags.empty() ? 0.0 : static_cast<double>(f.element_flags[e] != 0));
  }
  out << "CELL_DATA " << ne << '\n';
  constexpr std::array<std::string_view, 7> cell_names = {
      "h_avg", "hu_avg", "hv_avg", "htheta_avg", "theta_E", "p_E", "mood_flag"};
  for (int k = 0; k < 7; ++k) scalars(out, cell_names[k], cd[k]);
}

void write_vtk(const std::filesystem::path& path, const VtkFrame& frame) {
  std::ofstream out = open_output(path);
  write_vtk(out, frame);
  if (!out) throw OutputError("failed writing " + path.string());
}

std::vector<Vec2> read_vtk_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string token;
  while (in >> token && token != "POINTS") {
  }
  long n = 0;
  std::string type;
  if (!(in >> n >> type) || n < 0) throw InputError(path.string() + ": no POINTS section");
  std::vector<Vec2> out;
  out.reserve(n);
  for (long i = 0; i < n; ++i) {
    double x, y, z;
    if (!(in >> x >> y >> z)) throw InputError(path.string() + ": truncated POINTS section");
    out.emplace_back(x, y);
  }
  return out;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) throw std::invalid_argument("row width does not match header");
  rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i > 0) out << ',';
      out << quote(fields[i]);
    }
    out << "\r\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out = open_output(path);
  write(out);
  if (!out) throw OutputError("failed writing " + path.string());
}

CsvTable diagnostics_table(std::span<const DiagnosticsRow> rows) {
  CsvTable table({"t", "dt", "flagged_elements", "flagged_points", "mass_total", "htheta_total"});
  for (const DiagnosticsRow& r : rows) {
    table.add_row({format_number(r.t), format_number(r.dt), std::to_string(r.flagged_elements),
                   std::to_string(r.flagged_points), format_number(r.mass_total),
                   format_number(r.htheta_total)});
  }
  return table;
}

std::pair<CsvTable, CsvTable> convergence_tables(std::span<const ConvergenceRow> rows) {
  CsvTable avg({"max_sqrt_area", "h", "h_rate", "hu", "hu_rate", "hv", "hv_rate"});
  CsvTable pts({"max_sqrt_dual", "h", "h_rate", "hu", "hu_rate", "hv", "hv_rate"});
  for (const ConvergenceRow& r : rows) {
    std::vector<std::string> a{format_number(r.size_averages)};
    std::vector<std::string> p{format_number(r.size_points)};
    for (int k = 0; k < 3; ++k) {
      a.push_back(format_number(r.errors.averages.l1[k]));
      a.push_back(format_number(r.rate_averages[k]));
      p.push_back(format_number(r.errors.points.l1[k]));
      p.push_back(format_number(r.rate_points[k]));
    }
    avg.add_row(std::move(a));
    pts.add_row(std::move(p));
  }
  return {std::move(avg), std::move(pts)};
}

std::pair<CsvTable, CsvTable> drift_tables(
    std::span<const std::pair<std::string, DriftReport>> reports) {
  const std::vector<std::string> header = {"scheme",    "h_l1",      "h_linf",      "hu_l1",
                                           "hu_linf",   "hv_l1",     "hv_linf",     "htheta_l1",
                                           "htheta_linf"};
  CsvTable avg(header);
  CsvTable pts(header);
  for (const auto& [label, report] : reports) {
    std::vector<std::string> a{label};
    std::vector<std::string> p{label};
    append_norms(a, report.drift.averages);
    append_norms(p, report.drift.points);
    avg.add_row(std::move(a));
    pts.add_row(std::move(p));
  }
  return {std::move(avg), std::move(pts)};
}

}  // namespace pampa::io
