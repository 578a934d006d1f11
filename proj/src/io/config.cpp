#include "pampa/io/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace pampa::io {
namespace {

std::string join_lines(const std::vector<std::string>& problems) {
  std::string out;
  for (const std::string& p : problems) {
    if (!out.empty()) out += '\n';
    out += p;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) return {};
  return v;
}

std::optional<long> parse_long(std::string_view s) {
  long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return {};
  return v;
}

std::optional<bool> parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  return {};
}

using Setter = std::function<void(RunConfig&, std::string_view, std::vector<std::string>&)>;

Setter number(double RunConfig::*field) {
  return [field](RunConfig& c, std::string_view v, std::vector<std::string>& errs) {
    if (auto d = parse_double(v)) c.*field = *d;
    else errs.push_back("expected a number, got '" + std::string(v) + "'");
  };
}

Setter flag(bool RunConfig::*field) {
  return [field](RunConfig& c, std::string_view v, std::vector<std::string>& errs) {
    if (auto b = parse_bool(v)) c.*field = *b;
    else errs.push_back("expected true or false, got '" + std::string(v) + "'");
  };
}

Setter text(std::string RunConfig::*field) {
  return [field](RunConfig& c, std::string_view v, std::vector<std::string>&) {
    c.*field = std::string(v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"scenario", text(&RunConfig::scenario)},
      {"mesh", text(&RunConfig::mesh)},
      {"meshes",
       [](RunConfig& c, std::string_view v, std::vector<std::string>& errs) {
         c.meshes.clear();
         for (auto item : split_list(v)) {
           if (item.empty()) errs.push_back("empty mesh entry");
           else c.meshes.emplace_back(item);
         }
       }},
      {"wb_mode",
       [](RunConfig& c, std::string_view v, std::vector<std::string>& errs) {
         try {
           c.wb_mode = parse_wb_mode(v);
         } catch (const ConfigError& e) {
           errs.push_back(e.what());
         }
       }},
      {"variable_set",
       [](RunConfig& c, std::string_view v, std::vector<std::string>& errs) {
         try {
           c.variable_set = parse_variable_set(v);
         } catch (const ConfigError& e) {
           errs.push_back(e.what());
         }
       }},
      {"mood", flag(&RunConfig::mood)},
      {"dmp", flag(&RunConfig::dmp)},
      {"cfl", number(&RunConfig::cfl)},
      {"t_final",
       [](RunConfig& c, std::string_view v, std::vector<std::string>& errs) {
         if (auto d = parse_double(v)) c.t_final = *d;
         else errs.push_back("expected a number, got '" + std::string(v) + "'");
       }},
      {"output_times",
       [](RunConfig& c, std::string_view v, std::vector<std::string>& errs) {
         c.output_times.clear();
         for (auto item : split_list(v)) {
           if (auto d = parse_double(item)) c.output_times.push_back(*d);
           else errs.push_back("expected a number, got '" + std::string(item) + "'");
         }
       }},
      {"output_interval", number(&RunConfig::output_interval)},
      {"output_dir", text(&RunConfig::output_dir)},
      {"deterministic", flag(&RunConfig::deterministic)},
      {"plateau_epsilon", number(&RunConfig::plateau_epsilon)},
      {"max_steps",
       [](RunConfig& c, std::string_view v, std::vector<std::string>& errs) {
         if (auto n = parse_long(v)) c.max_steps = *n;
         else errs.push_back("expected an integer, got '" + std::string(v) + "'");
       }},
  };
  return table;
}

std::vector<std::string> range_problems(const RunConfig& c) {
  std::vector<std::string> out;
  auto plain = [&](std::string_view key, const std::string& v, bool in_list) {
    if (v.find_first_of(in_list ? "#\n," : "#\n") != std::string::npos || trim(v) != v) {
      out.push_back(std::string(key) + ": '" + v + "' cannot be written back");
    }
  };
  plain("scenario", c.scenario, false);
  plain("mesh", c.mesh, false);
  plain("output_dir", c.output_dir, false);
  for (const std::string& m : c.meshes) plain("meshes", m, true);
  if (c.scenario.empty()) out.push_back("scenario: must not be empty");
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) out.push_back("cfl: must lie in (0, 1]");
  if (c.t_final && !(*c.t_final > 0.0)) out.push_back("t_final: must be positive");
  for (double t : c.output_times) {
    if (!(t > 0.0)) out.push_back("output_times: " + format_double(t) + " is not positive");
  }
  if (!(c.output_interval >= 0.0)) out.push_back("output_interval: must be non-negative");
  if (c.output_dir.empty()) out.push_back("output_dir: must not be empty");
  if (!(c.plateau_epsilon >= 0.0)) out.push_back("plateau_epsilon: must be non-negative");
  if (c.max_steps <= 0) out.push_back("max_steps: must be positive");
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

std::string_view to_string(WbMode mode) {
  switch (mode) {
    case WbMode::Adaptive: return "adaptive";
    case WbMode::LobattoOnly: return "lobatto_only";
    case WbMode::LegendreOnly: return "legendre_only";
  }
  return "adaptive";
}

std::string_view to_string(VariableSet set) {
  return set == VariableSet::Pmt ? "pmt" : "prim";
}

WbMode parse_wb_mode(std::string_view text) {
  if (text == "adaptive") return WbMode::Adaptive;
  if (text == "lobatto_only") return WbMode::LobattoOnly;
  if (text == "legendre_only") return WbMode::LegendreOnly;
  throw ConfigError({"wb_mode: expected adaptive, lobatto_only or legendre_only, got '" +
                     std::string(text) + "'"});
}

VariableSet parse_variable_set(std::string_view text) {
  if (text == "pmt") return VariableSet::Pmt;
  if (text == "prim") return VariableSet::Prim;
  throw ConfigError({"variable_set: expected pmt or prim, got '" + std::string(text) + "'"});
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::vector<std::string> problems;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back(where + "expected 'key = value'");
      continue;
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      problems.push_back(where + "unknown key '" + std::string(key) + "'");
      continue;
    }
    if (auto [s, fresh] = seen.emplace(std::string(key), line_no); !fresh) {
      problems.push_back(where + "'" + std::string(key) + "' already set on line " +
                         std::to_string(s->second));
      continue;
    }
    std::vector<std::string> errs;
    it->second(config, value, errs);
    for (const std::string& e : errs) problems.push_back(where + std::string(key) + ": " + e);
  }
  for (const std::string& p : range_problems(config)) problems.push_back(p);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return config;
}

RunConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read config file " + path.string()});
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const ConfigError& e) {
    std::vector<std::string> problems;
    for (const std::string& p : e.problems()) problems.push_back(path.string() + ": " + p);
    throw ConfigError(std::move(problems));
  }
}

std::string serialize(const RunConfig& c) {
  std::ostringstream out;
  auto list = [](const auto& items, auto fmt) {
    std::string s;
    for (const auto& item : items) {
      if (!s.empty()) s += ", ";
      s += fmt(item);
    }
    return s;
  };
  auto same = [](const std::string& s) { return s; };
  out << "scenario = " << c.scenario << '\n';
  out << "mesh = " << c.mesh << '\n';
  out << "meshes = " << list(c.meshes, same) << '\n';
  out << "wb_mode = " << to_string(c.wb_mode) << '\n';
  out << "variable_set = " << to_string(c.variable_set) << '\n';
  out << "mood = " << (c.mood ? "true" : "false") << '\n';
  out << "dmp = " << (c.dmp ? "true" : "false") << '\n';
  out << "cfl = " << format_double(c.cfl) << '\n';
  if (c.t_final) out << "t_final = " << format_double(*c.t_final) << '\n';
  out << "output_times = " << list(c.output_times, format_double) << '\n';
  out << "output_interval = " << format_double(c.output_interval) << '\n';
  out << "output_dir = " << c.output_dir << '\n';
  out << "deterministic = " << (c.deterministic ? "true" : "false") << '\n';
  out << "plateau_epsilon = " << format_double(c.plateau_epsilon) << '\n';
  out << "max_steps = " << c.max_steps << '\n';
  return out.str();
}

void apply_overrides(RunConfig& config,
                     std::span<const std::pair<std::string, std::string>> settings) {
  std::vector<std::string> problems;
  for (const auto& [key, value] : settings) {
    const auto it = setters().find(key);
    if (it == setters().end()) {
      problems.push_back("unknown key '" + key + "'");
      continue;
    }
    std::vector<std::string> errs;
    it->second(config, trim(value), errs);
    for (const std::string& e : errs) problems.push_back(key + ": " + e);
  }
  for (const std::string& p : range_problems(config)) problems.push_back(p);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

void validate(const RunConfig& config) {
  auto problems = range_problems(config);
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

std::filesystem::path output_directory(const RunConfig& config) {
  if (const char* env = std::getenv("PAMPA_OUTPUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return config.output_dir;
}

}  // namespace pampa::io
