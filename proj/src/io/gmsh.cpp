#include "pampa/io/gmsh.hpp"

#include <fstream>
#include <map>
#include <string>
#include <unordered_map>

namespace pampa::io {
namespace {

constexpr int kPoint = 15;
constexpr int kLine = 1;
constexpr int kTriangle = 2;

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <typename T>
  T next(const char* what) {
    T value;
    if (!(in_ >> value)) fail(std::string("expected ") + what);
    return value;
  }

  /// Reads the next section header, or returns false at end of input.
  bool header(std::string& name) {
    std::string token;
    while (in_ >> token) {
      if (!token.empty() && token[0] == '$') {
        name = token.substr(1);
        return true;
      }
    }
    return false;
  }

  void expect_end(const std::string& section) {
    std::string token;
    if (!(in_ >> token) || token != "$End" + section) {
      fail("section $" + section + " is not closed where expected");
    }
  }

  void skip_section(const std::string& section) {
    std::string token;
    while (in_ >> token) {
      if (token == "$End" + section) return;
    }
    fail("section $" + section + " is not closed");
  }

  [[noreturn]] static void fail(const std::string& message) {
    throw InputError("gmsh: " + message);
  }

 private:
  std::istream& in_;
};

[[noreturn]] void unsupported(int type) {
  Reader::fail("unsupported element type " + std::to_string(type) +
               " (only 3-node triangles and 2-node lines are accepted)");
}

struct Raw {
  std::vector<long> node_ids;
  std::vector<Vec2> nodes;
  std::vector<std::array<long, 3>> triangles;
  struct Line {
    long a, b;
    int tag;
  };
  std::vector<Line> lines;
};

void nodes_v2(Reader& r, Raw& raw) {
  const long n = r.next<long>("node count");
  if (n < 0) Reader::fail("negative node count");
  raw.node_ids.reserve(n);
  raw.nodes.reserve(n);
  for (long i = 0; i < n; ++i) {
    raw.node_ids.push_back(r.next<long>("node id"));
    const double x = r.next<double>("x coordinate");
    const double y = r.next<double>("y coordinate");
    r.next<double>("z coordinate");
    raw.nodes.emplace_back(x, y);
  }
  r.expect_end("Nodes");
}

void elements_v2(Reader& r, Raw& raw) {
  const long n = r.next<long>("element count");
  if (n < 0) Reader::fail("negative element count");
  for (long i = 0; i < n; ++i) {
    r.next<long>("element id");
    const int type = r.next<int>("element type");
    const int ntags = r.next<int>("tag count");
    if (ntags < 0) Reader::fail("negative tag count");
    int physical = 0;
    for (int k = 0; k < ntags; ++k) {
      const int t = r.next<int>("element tag");
      if (k == 0) physical = t;
    }
    if (type == kTriangle) {
      std::array<long, 3> t{};
      for (long& v : t) v = r.next<long>("triangle node");
      raw.triangles.push_back(t);
    } else if (type == kLine) {
      const long a = r.next<long>("line node");
      const long b = r.next<long>("line node");
      raw.lines.push_back({a, b, physical});
    } else if (type == kPoint) {
      r.next<long>("point node");
    } else {
      unsupported(type);
    }
  }
  r.expect_end("Elements");
}

/// Physical tag of each curve entity (first tag, 0 if none).
std::map<int, int> entities_v41(Reader& r) {
  const long np = r.next<long>("point entity count");
  const long nc = r.next<long>("curve entity count");
  const long ns = r.next<long>("surface entity count");
  const long nv = r.next<long>("volume entity count");
  if (np < 0 || nc < 0 || ns < 0 || nv < 0) Reader::fail("negative entity count");
  for (long i = 0; i < np; ++i) {
    r.next<int>("point tag");
    for (int k = 0; k < 3; ++k) r.next<double>("point coordinate");
    const long nphys = r.next<long>("physical tag count");
    for (long k = 0; k < nphys; ++k) r.next<int>("physical tag");
  }
  std::map<int, int> curves;
  for (long i = 0; i < nc; ++i) {
    const int tag = r.next<int>("curve tag");
    for (int k = 0; k < 6; ++k) r.next<double>("bounding box");
    const long nphys = r.next<long>("physical tag count");
    int physical = 0;
    for (long k = 0; k < nphys; ++k) {
      const int t = r.next<int>("physical tag");
      if (k == 0) physical = t;
    }
    const long nb = r.next<long>("bounding point count");
    for (long k = 0; k < nb; ++k) r.next<int>("bounding point");
    curves[tag] = physical;
  }
  // Surfaces and volumes carry nothing that is needed here.
  r.skip_section("Entities");
  return curves;
}

void nodes_v41(Reader& r, Raw& raw) {
  const long blocks = r.next<long>("node block count");
  const long total = r.next<long>("node count");
  r.next<long>("min node tag");
  r.next<long>("max node tag");
  if (blocks < 0 || total < 0) Reader::fail("negative node count");
  raw.node_ids.reserve(total);
  raw.nodes.reserve(total);
  for (long b = 0; b < blocks; ++b) {
    r.next<int>("entity dimension");
    r.next<int>("entity tag");
    const int parametric = r.next<int>("parametric flag");
    const long n = r.next<long>("block node count");
    if (n < 0) Reader::fail("negative block node count");
    const std::size_t first = raw.node_ids.size();
    for (long i = 0; i < n; ++i) raw.node_ids.push_back(r.next<long>("node tag"));
    for (long i = 0; i < n; ++i) {
      const double x = r.next<double>("x coordinate");
      const double y = r.next<double>("y coordinate");
      r.next<double>("z coordinate");
      if (parametric != 0) Reader::fail("parametric nodes are not supported");
      raw.nodes.emplace_back(x, y);
    }
    if (raw.nodes.size() != first + static_cast<std::size_t>(n)) Reader::fail("node block size");
  }
  if (static_cast<long>(raw.nodes.size()) != total) Reader::fail("node count mismatch");
  r.expect_end("Nodes");
}

void elements_v41(Reader& r, Raw& raw, const std::map<int, int>& curves) {
  const long blocks = r.next<long>("element block count");
  r.next<long>("element count");
  r.next<long>("min element tag");
  r.next<long>("max element tag");
  if (blocks < 0) Reader::fail("negative element block count");
  for (long b = 0; b < blocks; ++b) {
    const int dim = r.next<int>("entity dimension");
    const int entity = r.next<int>("entity tag");
    const int type = r.next<int>("element type");
    const long n = r.next<long>("block element count");
    if (n < 0) Reader::fail("negative block element count");
    if (type != kTriangle && type != kLine && type != kPoint) unsupported(type);
    int physical = 0;
    if (dim == 1) {
      const auto it = curves.find(entity);
      if (it != curves.end()) physical = it->second;
    }
    for (long i = 0; i < n; ++i) {
      r.next<long>("element tag");
      if (type == kTriangle) {
        std::array<long, 3> t{};
        for (long& v : t) v = r.next<long>("triangle node");
        raw.triangles.push_back(t);
      } else if (type == kLine) {
        const long a = r.next<long>("line node");
        const long c = r.next<long>("line node");
        raw.lines.push_back({a, c, physical});
      } else {
        r.next<long>("point node");
      }
    }
  }
  r.expect_end("Elements");
}

GmshMesh compact(const Raw& raw) {
  std::unordered_map<long, int> file_index;
  file_index.reserve(raw.node_ids.size());
  for (std::size_t i = 0; i < raw.node_ids.size(); ++i) {
    if (!file_index.emplace(raw.node_ids[i], static_cast<int>(i)).second) {
      Reader::fail("duplicate node id " + std::to_string(raw.node_ids[i]));
    }
  }
  auto lookup = [&](long id) {
    const auto it = file_index.find(id);
    if (it == file_index.end()) Reader::fail("unknown node id " + std::to_string(id));
    return it->second;
  };
  std::vector<int> used(raw.nodes.size(), -1);
  std::vector<std::array<int, 3>> tris;
  tris.reserve(raw.triangles.size());
  for (const auto& t : raw.triangles) {
    tris.push_back({lookup(t[0]), lookup(t[1]), lookup(t[2])});
    for (int v : tris.back()) used[v] = 0;
  }
  GmshMesh out;
  for (std::size_t i = 0; i < raw.nodes.size(); ++i) {
    if (used[i] == 0) {
      used[i] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(raw.nodes[i]);
    }
  }
  out.triangles.reserve(tris.size());
  for (const auto& t : tris) out.triangles.push_back({used[t[0]], used[t[1]], used[t[2]]});
  for (const auto& l : raw.lines) {
    const int a = used[lookup(l.a)];
    const int b = used[lookup(l.b)];
    if (a < 0 || b < 0) Reader::fail("boundary line references a vertex outside the triangulation");
    out.lines.push_back({a, b, l.tag});
  }
  if (out.triangles.empty()) Reader::fail("no triangles");
  return out;
}

}  // namespace

GmshMesh parse_gmsh(std::istream& in) {
  Reader r(in);
  std::string section;
  if (!r.header(section) || section != "MeshFormat") Reader::fail("missing $MeshFormat");
  const std::string version = r.next<std::string>("format version");
  const int file_type = r.next<int>("file type");
  r.next<int>("data size");
  if (version != "2.2" && version != "4.1") Reader::fail("unsupported version " + version);
  if (file_type != 0) Reader::fail("binary files are not supported");
  r.expect_end("MeshFormat");

  Raw raw;
  std::map<int, int> curves;
  bool have_nodes = false, have_elements = false;
  while (r.header(section)) {
    if (section.rfind("End", 0) == 0) Reader::fail("unexpected $" + section);
    if (section == "Nodes") {
      if (version == "2.2") nodes_v2(r, raw);
      else nodes_v41(r, raw);
      have_nodes = true;
    } else if (section == "Elements") {
      if (!have_nodes) Reader::fail("$Elements before $Nodes");
      if (version == "2.2") elements_v2(r, raw);
      else elements_v41(r, raw, curves);
      have_elements = true;
    } else if (section == "Entities" && version == "4.1") {
      curves = entities_v41(r);
    } else {
      r.skip_section(section);
    }
  }
  if (!have_nodes) Reader::fail("missing $Nodes");
  if (!have_elements) Reader::fail("missing $Elements");
  return compact(raw);
}

GmshMesh read_gmsh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open mesh file " + path.string());
  try {
    return parse_gmsh(in);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Mesh load_mesh(const std::filesystem::path& path) {
  GmshMesh raw = read_gmsh(path);
  try {
    return Mesh::build(std::move(raw.vertices), std::move(raw.triangles), raw.lines);
  } catch (const MeshError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace pampa::io
