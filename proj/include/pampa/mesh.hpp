#pragma once

#include "pampa/types.hpp"

#include <array>
#include <span>
#include <vector>

namespace pampa {

/// Quadratic triangle. Local DoFs 0..2 are the vertices, 3..5 the midpoints
/// of edges (0,1), (1,2) and (2,0). Local edge l joins vertices l and (l+1)%3
/// and carries midpoint DoF 3+l; it is opposite vertex (l+2)%3.
struct Element {
  std::array<int, 3> vertices{};
  std::array<int, 3> edges{};
  std::array<int, 6> dofs{};
  double area = 0.0;
};

struct Edge {
  std::array<int, 2> vertices{};  // ascending
  int dof = kNone;                // midpoint DoF
  std::array<int, 2> elements{kNone, kNone};
  std::array<int, 2> local{kNone, kNone};  // local edge index in each element
  double length = 0.0;
  Vec2 normal = Vec2::Zero();  // unit, pointing out of elements[0]
  int tag = 0;                 // physical tag of boundary edges

  [[nodiscard]] bool is_boundary() const { return elements[1] == kNone; }
};

/// Occurrence of a DoF inside an element, as local index 0..5.
struct DofIncidence {
  int element;
  int local;
};

/// Scaled normals attached to the six boundary DoFs of an element. Vertex
/// DoFs carry the inward normal of the opposite edge, midpoint DoFs the
/// outward normal of their own edge, both scaled by the edge length.
using DofNormals = std::array<Vec2, 6>;

/// A boundary edge tag assigned by the mesh file, keyed by vertex pair.
struct BoundaryTag {
  int a;
  int b;
  int tag;
};

/// Unstructured triangle mesh with P2 DoF numbering: vertices first in input
/// order, then one midpoint per edge in ascending (min vertex, max vertex)
/// order. Immutable after construction.
class Mesh {
 public:
  /// Throws MeshError on invalid vertex ids, duplicate or zero-area
  /// triangles, and edges shared by more than two triangles. Clockwise
  /// triangles are reoriented.
  static Mesh build(std::vector<Vec2> vertices,
                    std::vector<std::array<int, 3>> triangles,
                    std::span<const BoundaryTag> tags = {});

  [[nodiscard]] int vertex_count() const { return static_cast<int>(vertices_.size()); }
  [[nodiscard]] int element_count() const { return static_cast<int>(elements_.size()); }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] int dof_count() const { return static_cast<int>(dof_positions_.size()); }

  [[nodiscard]] const std::vector<Vec2>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<Element>& elements() const { return elements_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const Element& element(int e) const { return elements_[e]; }
  [[nodiscard]] const Edge& edge(int e) const { return edges_[e]; }

  [[nodiscard]] const Vec2& dof_position(int dof) const { return dof_positions_[dof]; }
  [[nodiscard]] const std::vector<Vec2>& dof_positions() const { return dof_positions_; }
  [[nodiscard]] bool is_vertex_dof(int dof) const { return dof < vertex_count(); }
  [[nodiscard]] bool is_boundary_dof(int dof) const { return boundary_dof_[dof] != 0; }

  /// Elements containing a DoF, ascending by element id.
  [[nodiscard]] std::span<const DofIncidence> dof_elements(int dof) const {
    return {incidences_.data() + incidence_offsets_[dof],
            incidences_.data() + incidence_offsets_[dof + 1]};
  }

  /// Element across local edge l, or kNone on the boundary.
  [[nodiscard]] int neighbor(int e, int l) const;

  /// {E} together with all elements sharing an edge with E, sorted.
  [[nodiscard]] std::vector<int> neighborhood(int e) const;
  /// Union of neighborhood(E') over E' in neighborhood(E), sorted.
  [[nodiscard]] std::vector<int> extended_neighborhood(int e) const;

  /// Sum over adjacent elements of |E|/9.
  [[nodiscard]] double dual_volume(int dof) const { return dual_volumes_[dof]; }
  [[nodiscard]] const std::vector<double>& dual_volumes() const { return dual_volumes_; }

  [[nodiscard]] DofNormals scaled_normals(int e) const;
  /// Unit outward normal of local edge l.
  [[nodiscard]] Vec2 outward_normal(int e, int l) const;
  [[nodiscard]] Vec2 centroid(int e) const;
  [[nodiscard]] double perimeter(int e) const;
  [[nodiscard]] double inradius(int e) const { return 2.0 * elements_[e].area / perimeter(e); }
  /// Constant gradients of the barycentric coordinates on element e.
  [[nodiscard]] std::array<Vec2, 3> barycentric_gradients(int e) const;
  /// Physical point of barycentric coordinates on element e.
  [[nodiscard]] Vec2 point(int e, const Vec3& lambda) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<Element> elements_;
  std::vector<Edge> edges_;
  std::vector<Vec2> dof_positions_;
  std::vector<char> boundary_dof_;
  std::vector<int> incidence_offsets_;
  std::vector<DofIncidence> incidences_;
  std::vector<double> dual_volumes_;
};

}  // namespace pampa
