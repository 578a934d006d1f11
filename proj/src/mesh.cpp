#include "pampa/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace pampa {

namespace {

struct HalfEdge {
  int a, b;  // ascending vertex ids
  int element;
  int local;
};

double signed_area(const Vec2& p0, const Vec2& p1, const Vec2& p2) {
  return 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) -
                (p2.x() - p0.x()) * (p1.y() - p0.y()));
}

}  // namespace

Mesh Mesh::build(std::vector<Vec2> vertices,
                 std::vector<std::array<int, 3>> triangles,
                 std::span<const BoundaryTag> tags) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  const int nv = m.vertex_count();
  if (triangles.empty()) throw MeshError("mesh has no triangles");

  std::vector<std::array<int, 3>> sorted;
  sorted.reserve(triangles.size());
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    auto& tri = triangles[t];
    for (int v : tri) {
      if (v < 0 || v >= nv) {
        throw MeshError("triangle " + std::to_string(t) + " references invalid vertex " +
                        std::to_string(v));
      }
    }
    double a = signed_area(m.vertices_[tri[0]], m.vertices_[tri[1]], m.vertices_[tri[2]]);
    // Relative to the squared longest edge so the check is scale free.
    double l2 = 0.0;
    for (int k = 0; k < 3; ++k) {
      l2 = std::max(l2, (m.vertices_[tri[(k + 1) % 3]] - m.vertices_[tri[k]]).squaredNorm());
    }
    if (!(std::abs(a) > 1e-14 * l2)) {
      throw MeshError("degenerate triangle " + std::to_string(t));
    }
    if (a < 0) std::swap(tri[1], tri[2]);
    auto key = tri;
    std::sort(key.begin(), key.end());
    sorted.push_back(key);
  }
  {
    auto copy = sorted;
    std::sort(copy.begin(), copy.end());
    if (std::adjacent_find(copy.begin(), copy.end()) != copy.end()) {
      throw MeshError("duplicate triangle");
    }
  }

  const int ne = static_cast<int>(triangles.size());
  m.elements_.resize(ne);
  std::vector<HalfEdge> half;
  half.reserve(3 * ne);
  for (int e = 0; e < ne; ++e) {
    Element& el = m.elements_[e];
    el.vertices = triangles[e];
    el.area = signed_area(m.vertices_[el.vertices[0]], m.vertices_[el.vertices[1]],
                          m.vertices_[el.vertices[2]]);
    for (int l = 0; l < 3; ++l) {
      int a = el.vertices[l];
      int b = el.vertices[(l + 1) % 3];
      half.push_back({std::min(a, b), std::max(a, b), e, l});
    }
  }
  std::sort(half.begin(), half.end(), [](const HalfEdge& x, const HalfEdge& y) {
    return std::tie(x.a, x.b, x.element) < std::tie(y.a, y.b, y.element);
  });

  for (std::size_t i = 0; i < half.size();) {
    std::size_t j = i;
    while (j < half.size() && half[j].a == half[i].a && half[j].b == half[i].b) ++j;
    if (j - i > 2) {
      throw MeshError("non-manifold edge (" + std::to_string(half[i].a) + "," +
                      std::to_string(half[i].b) + ")");
    }
    Edge ed;
    ed.vertices = {half[i].a, half[i].b};
    for (std::size_t k = i; k < j; ++k) {
      ed.elements[k - i] = half[k].element;
      ed.local[k - i] = half[k].local;
    }
    const int id = static_cast<int>(m.edges_.size());
    ed.dof = nv + id;
    const Element& owner = m.elements_[ed.elements[0]];
    const Vec2& p = m.vertices_[owner.vertices[ed.local[0]]];
    const Vec2& q = m.vertices_[owner.vertices[(ed.local[0] + 1) % 3]];
    Vec2 d = q - p;
    ed.length = d.norm();
    ed.normal = Vec2(d.y(), -d.x()) / ed.length;
    for (std::size_t k = i; k < j; ++k) m.elements_[half[k].element].edges[half[k].local] = id;
    m.edges_.push_back(ed);
    i = j;
  }

  for (const BoundaryTag& bt : tags) {
    auto key = std::minmax(bt.a, bt.b);
    auto it = std::lower_bound(m.edges_.begin(), m.edges_.end(), key,
                               [](const Edge& ed, const std::pair<int, int>& k) {
                                 return std::tie(ed.vertices[0], ed.vertices[1]) <
                                        std::tie(k.first, k.second);
                               });
    if (it != m.edges_.end() && it->vertices[0] == key.first && it->vertices[1] == key.second) {
      it->tag = bt.tag;
    }
  }

  const int ndof = nv + m.edge_count();
  m.dof_positions_.resize(ndof);
  for (int v = 0; v < nv; ++v) m.dof_positions_[v] = m.vertices_[v];
  for (const Edge& ed : m.edges_) {
    m.dof_positions_[ed.dof] = 0.5 * (m.vertices_[ed.vertices[0]] + m.vertices_[ed.vertices[1]]);
  }
  for (Element& el : m.elements_) {
    for (int k = 0; k < 3; ++k) {
      el.dofs[k] = el.vertices[k];
      el.dofs[3 + k] = m.edges_[el.edges[k]].dof;
    }
  }

  m.boundary_dof_.assign(ndof, 0);
  for (const Edge& ed : m.edges_) {
    if (!ed.is_boundary()) continue;
    m.boundary_dof_[ed.vertices[0]] = 1;
    m.boundary_dof_[ed.vertices[1]] = 1;
    m.boundary_dof_[ed.dof] = 1;
  }

  m.incidence_offsets_.assign(ndof + 1, 0);
  for (const Element& el : m.elements_) {
    for (int d : el.dofs) ++m.incidence_offsets_[d + 1];
  }
  for (int d = 0; d < ndof; ++d) m.incidence_offsets_[d + 1] += m.incidence_offsets_[d];
  m.incidences_.resize(m.incidence_offsets_[ndof]);
  std::vector<int> fill(m.incidence_offsets_.begin(), m.incidence_offsets_.end() - 1);
  for (int e = 0; e < ne; ++e) {
    for (int k = 0; k < 6; ++k) {
      int d = m.elements_[e].dofs[k];
      m.incidences_[fill[d]++] = {e, k};
    }
  }

  m.dual_volumes_.assign(ndof, 0.0);
  for (int d = 0; d < ndof; ++d) {
    for (const DofIncidence& inc : m.dof_elements(d)) {
      m.dual_volumes_[d] += m.elements_[inc.element].area / 9.0;
    }
  }
  return m;
}

int Mesh::neighbor(int e, int l) const {
  const Edge& ed = edges_[elements_[e].edges[l]];
  return ed.elements[0] == e ? ed.elements[1] : ed.elements[0];
}

std::vector<int> Mesh::neighborhood(int e) const {
  std::vector<int> out{e};
  for (int l = 0; l < 3; ++l) {
    int n = neighbor(e, l);
    if (n != kNone) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> Mesh::extended_neighborhood(int e) const {
  std::vector<int> out;
  for (int n : neighborhood(e)) {
    auto nb = neighborhood(n);
    out.insert(out.end(), nb.begin(), nb.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DofNormals Mesh::scaled_normals(int e) const {
  const Element& el = elements_[e];
  DofNormals n;
  for (int l = 0; l < 3; ++l) {
    const Vec2& p = vertices_[el.vertices[l]];
    const Vec2& q = vertices_[el.vertices[(l + 1) % 3]];
    Vec2 out(q.y() - p.y(), -(q.x() - p.x()));
    n[3 + l] = out;
    n[(l + 2) % 3] = -out;
  }
  return n;
}

Vec2 Mesh::outward_normal(int e, int l) const {
  const Edge& ed = edges_[elements_[e].edges[l]];
  return ed.elements[0] == e ? ed.normal : Vec2(-ed.normal);
}

Vec2 Mesh::centroid(int e) const {
  const Element& el = elements_[e];
  return (vertices_[el.vertices[0]] + vertices_[el.vertices[1]] + vertices_[el.vertices[2]]) / 3.0;
}

double Mesh::perimeter(int e) const {
  const Element& el = elements_[e];
  return edges_[el.edges[0]].length + edges_[el.edges[1]].length + edges_[el.edges[2]].length;
}

std::array<Vec2, 3> Mesh::barycentric_gradients(int e) const {
  // grad(lambda_i) is the inward edge normal opposite vertex i over 2|E|.
  DofNormals n = scaled_normals(e);
  const double s = 0.5 / elements_[e].area;
  return {n[0] * s, n[1] * s, n[2] * s};
}

Vec2 Mesh::point(int e, const Vec3& lambda) const {
  const Element& el = elements_[e];
  return lambda[0] * vertices_[el.vertices[0]] + lambda[1] * vertices_[el.vertices[1]] +
         lambda[2] * vertices_[el.vertices[2]];
}

}  // namespace pampa
