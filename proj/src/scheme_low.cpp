#include "pampa/scheme_low.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pampa {

namespace {

Vec4 lf(const Vec4& a1, const Vec4& a2, const Vec2& n, double g) {
  const double len = n.norm();
  auto speed = [&](const Vec4& u) {
    return std::abs((u[1] * n.x() + u[2] * n.y()) / u[0]) + std::sqrt(g * u[3]) * len;
  };
  const double alpha = std::max(speed(a1), speed(a2));
  return 0.5 * (fast::normal_flux(a1, n, g) + fast::normal_flux(a2, n, g) - alpha * (a2 - a1));
}

constexpr std::array<int, 6> kRing{0, 3, 1, 4, 2, 5};

bool masked(std::span<const char> mask, int i) { return mask.empty() || mask[i] != 0; }

}  // namespace

Vec4 lf_flux(const Vec4& a1, const Vec4& a2, const Vec2& n, double g) {
  check_conservative(a1);
  check_conservative(a2);
  return lf(a1, a2, n, g);
}

std::array<SubTriangle, 6> sub_triangles(const Mesh& mesh, int e) {
  std::array<Vec2, 7> x;
  const auto& dofs = mesh.element(e).dofs;
  for (int k = 0; k < 6; ++k) x[k] = mesh.dof_position(dofs[k]);
  x[6] = mesh.centroid(e);
  std::array<SubTriangle, 6> out;
  for (int i = 0; i < 6; ++i) {
    SubTriangle& t = out[i];
    t.nodes = {kRing[i], kRing[(i + 1) % 6], 6};
    const Vec2& a = x[t.nodes[0]];
    const Vec2& b = x[t.nodes[1]];
    const Vec2& c = x[t.nodes[2]];
    t.area = 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
    for (int k = 0; k < 3; ++k) {
      const Vec2 d = x[t.nodes[(k + 2) % 3]] - x[t.nodes[(k + 1) % 3]];
      t.normals[k] = Vec2(-d.y(), d.x());
    }
  }
  return out;
}

void cell_average_rhs_low(const Discretization& disc, const SolutionField& field, double t,
                          std::span<Vec4> out, std::span<const char> element_mask) {
  const Mesh& mesh = disc.mesh();
  const double g = disc.params().g;
  const bool dirichlet = disc.boundary().kind == BoundaryKind::Dirichlet;
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (!masked(element_mask, e)) continue;
    const Vec4& ue = field.averages[e];
    Vec4 acc = Vec4::Zero();
    for (int l = 0; l < 3; ++l) {
      const Edge& ed = mesh.edge(mesh.element(e).edges[l]);
      const int nb = mesh.neighbor(e, l);
      Vec4 other = ue;
      if (nb != kNone) {
        other = field.averages[nb];
      } else if (dirichlet) {
        other = disc.boundary().exact(mesh.dof_position(ed.dof), t);
      }
      acc -= lf(ue, other, mesh.outward_normal(e, l) * ed.length, g);
    }
    if (disc.sloped(e)) {
      // -g |E| (h theta) grad Z_h at the centroid.
      const auto& z = disc.z_nodes(e);
      const auto& n = disc.normals(e);
      const Vec2 s = (2.0 / 3.0) * (z[3] * n[2] + z[4] * n[0] + z[5] * n[1]) -
                     (1.0 / 6.0) * (z[0] * n[0] + z[1] * n[1] + z[2] * n[2]);
      acc[1] += g * ue[3] * s.x();
      acc[2] += g * ue[3] * s.y();
    }
    out[e] = acc / mesh.element(e).area;
  }
}

std::array<Vec4, 6> sub_cell_residuals(const Discretization& disc, const SolutionField& field,
                                       int e) {
  const Mesh& mesh = disc.mesh();
  const double g = disc.params().g;
  const VariableSet set = disc.variables();
  const auto& dofs = mesh.element(e).dofs;
  std::array<Vec4, 7> v;
  for (int k = 0; k < 6; ++k) v[k] = field.points[dofs[k]];
  // The centre node carries the average: the quadratic reconstruction at the
  // centroid is not bounded by the data next to a jump.
  v[6] = fast::to_vars(set, field.averages[e]);
  const auto& z = disc.z_nodes(e);

  std::array<Vec4, 6> phi{};
  for (auto& p : phi) p.setZero();
  for (const SubTriangle& tri : sub_triangles(mesh, e)) {
    const auto [a, b, c] = tri.nodes;
    const Vec4 mean = (v[a] + v[b] + v[c]) / 3.0;
    const double zmean = (z[a] + z[b] + z[c]) / 3.0;
    const double s = 0.5 / tri.area;
    const Vec4 dx = s * (v[a] * tri.normals[0].x() + v[b] * tri.normals[1].x() +
                         v[c] * tri.normals[2].x());
    const Vec4 dy = s * (v[a] * tri.normals[0].y() + v[b] * tri.normals[1].y() +
                         v[c] * tri.normals[2].y());
    const Vec2 gz = s * (z[a] * tri.normals[0] + z[b] * tri.normals[1] + z[c] * tri.normals[2]);
    const Vec2 gz2 = s * (z[a] * z[a] * tri.normals[0] + z[b] * z[b] * tri.normals[1] +
                          z[c] * z[c] * tri.normals[2]);
    const Vec4 r = (tri.area / 3.0) * (fast::apply_jacobian(set, mean, dx, dy, g) -
                                       fast::split_source(set, mean, zmean, gz, gz2, g));
    double alpha = 0.0;
    bool finite = true;
    for (int k : tri.nodes) {
      const fast::Waves w = fast::waves(set, v[k], g);
      for (const Vec2& n : tri.normals) {
        const double speed = std::abs(w.u * n.x() + w.v * n.y()) + w.c * n.norm();
        finite = finite && std::isfinite(speed);
        alpha = std::max(alpha, speed);
      }
    }
    if (!finite) alpha = std::numeric_limits<double>::quiet_NaN();
    for (int k : tri.nodes) {
      if (k < 6) phi[k] += r + alpha * (v[k] - mean);
    }
  }
  return phi;
}

void point_value_rhs_low(const Discretization& disc, const SolutionField& field,
                         std::span<Vec4> out, std::span<const char> dof_mask) {
  const Mesh& mesh = disc.mesh();
  const bool dirichlet = disc.boundary().kind == BoundaryKind::Dirichlet;
  for (int s = 0; s < mesh.dof_count(); ++s) {
    if (masked(dof_mask, s)) out[s].setZero();
  }
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& dofs = mesh.element(e).dofs;
    bool any = dof_mask.empty();
    for (int k = 0; k < 6 && !any; ++k) any = dof_mask[dofs[k]] != 0;
    if (!any) continue;
    const auto phi = sub_cell_residuals(disc, field, e);
    for (int k = 0; k < 6; ++k) {
      if (masked(dof_mask, dofs[k])) out[dofs[k]] -= phi[k];
    }
  }
  for (int s = 0; s < mesh.dof_count(); ++s) {
    if (!masked(dof_mask, s)) continue;
    if (dirichlet && mesh.is_boundary_dof(s)) {
      out[s].setZero();
    } else {
      out[s] /= mesh.dual_volume(s);
    }
  }
}

void assemble_rhs_low(const Discretization& disc, const SolutionField& field, double t, Rhs& out,
                      std::span<const char> element_mask, std::span<const char> dof_mask) {
  out.points.resize(field.points.size(), Vec4::Zero());
  out.averages.resize(field.averages.size(), Vec4::Zero());
  cell_average_rhs_low(disc, field, t, out.averages, element_mask);
  point_value_rhs_low(disc, field, out.points, dof_mask);
}

}  // namespace pampa
