#pragma once

#include "pampa/mesh.hpp"

#include <filesystem>
#include <istream>
#include <vector>

namespace pampa::io {

/// Contents of a 2-D triangle mesh file. Vertices not used by any triangle
/// are dropped; the remaining ones keep their file order.
struct GmshMesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 3>> triangles;
  /// Boundary lines with their physical tag (0 if none).
  std::vector<BoundaryTag> lines;
};

/// ASCII MSH 2.2 or 4.1 with 3-node triangles. Points and 2-node lines are
/// accepted; any other element type is rejected. Throws InputError.
GmshMesh parse_gmsh(std::istream& in);
GmshMesh read_gmsh(const std::filesystem::path& path);

/// read_gmsh followed by Mesh::build.
Mesh load_mesh(const std::filesystem::path& path);

}  // namespace pampa::io
