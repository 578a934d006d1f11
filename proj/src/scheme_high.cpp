#include "pampa/scheme_high.hpp"

#include "pampa/simd/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pampa {

Discretization::Discretization(const Mesh& mesh, ScalarField z, Params params,
                               SchemeOptions options, Boundary boundary)
    : mesh_(&mesh),
      z_(std::move(z)),
      params_(params),
      options_(options),
      boundary_(std::move(boundary)) {
  if (!(params_.g > 0.0)) throw std::invalid_argument("gravity must be positive");
  if (z_.points.size() != static_cast<std::size_t>(mesh.dof_count()) ||
      z_.averages.size() != static_cast<std::size_t>(mesh.element_count())) {
    throw std::invalid_argument("bathymetry field does not match the mesh");
  }
  if (boundary_.kind == BoundaryKind::Dirichlet && !boundary_.exact) {
    throw std::invalid_argument("Dirichlet boundary needs an exact state");
  }
  const int ne = mesh.element_count();
  stencils_.resize(ne);
  normals_.resize(ne);
  z_nodes_.resize(ne);
  grad_z_.resize(ne);
  grad_z2_.resize(ne);
  area_grad_z_.resize(ne);
  sloped_.assign(ne, 0);
  boundary_normals_.assign(mesh.dof_count(), Vec2::Zero());
  const AreaRule& rule = area_rule();
  for (int e = 0; e < ne; ++e) {
    stencils_[e] = FdStencil::of(mesh, e);
    normals_[e] = mesh.scaled_normals(e);
    for (int j = 0; j < 6; ++j) {
      const int dof = mesh.element(e).dofs[j];
      if (mesh.is_boundary_dof(dof)) boundary_normals_[dof] += normals_[e][j];
    }
    const auto b = element_values(mesh, z_.points, e);
    std::array<double, 7> nodes{};
    std::array<double, 7> squares{};
    for (int i = 0; i < 6; ++i) nodes[i] = b[i];
    nodes[6] = centroid_value(b, z_.averages[e]);
    for (int i = 0; i < 7; ++i) squares[i] = nodes[i] * nodes[i];
    z_nodes_[e] = nodes;
    for (int j = 0; j < 6; ++j) {
      grad_z_[e][j] = fd_gradient(stencils_[e], nodes, j);
      grad_z2_[e][j] = fd_gradient(stencils_[e], squares, j);
    }
    const auto g = mesh.barycentric_gradients(e);
    bool any = false;
    for (int q = 0; q < 7; ++q) {
      const auto phi = basis::pampa_gradients(rule.nodes[q], g);
      Vec2 acc = z_.averages[e] * phi[6];
      for (int i = 0; i < 6; ++i) acc += b[i] * phi[i];
      area_grad_z_[e][q] = acc;
      any = any || acc.x() != 0.0 || acc.y() != 0.0;
    }
    sloped_[e] = any;
  }
  edge_rules_ = pampa::edge_rules(mesh, z_, options_.plateau_epsilon, options_.wb_mode);
}

void derive(const Discretization& disc, const SolutionField& field, Derived& out) {
  const Mesh& mesh = disc.mesh();
  out.cons_points.resize(field.points.size());
  simd::from_vars(disc.variables(), field.points, out.cons_points);
  out.cons_centroids.resize(mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    out.cons_centroids[e] =
        centroid_value(element_values(mesh, out.cons_points, e), field.averages[e]);
  }
  out.var_centroids.resize(mesh.element_count());
  simd::to_vars(disc.variables(), out.cons_centroids, out.var_centroids);
}

namespace {

// Quadratic trace through the edge values at s = 0, 1/2, 1.
Vec4 edge_trace(const Vec4& a, const Vec4& m, const Vec4& b, double s) {
  return ((1 - s) * (1 - 2 * s)) * a + (4 * s * (1 - s)) * m + (s * (2 * s - 1)) * b;
}

// Basis values of the reconstruction at the area quadrature nodes.
const std::array<std::array<double, 7>, 7>& area_basis() {
  static const auto table = [] {
    std::array<std::array<double, 7>, 7> t{};
    for (int q = 0; q < 7; ++q) t[q] = basis::pampa(area_rule().nodes[q]);
    return t;
  }();
  return table;
}

}  // namespace

void cell_average_rhs(const Discretization& disc, const SolutionField& field, const Derived& d,
                      double t, std::span<Vec4> out) {
  const Mesh& mesh = disc.mesh();
  const double g = disc.params().g;
  const bool dirichlet = disc.boundary().kind == BoundaryKind::Dirichlet;
  for (auto& o : out) o.setZero();

  for (int i = 0; i < mesh.edge_count(); ++i) {
    const Edge& ed = mesh.edge(i);
    const EdgeRule& rule = edge_rule(disc.edge_rule_of(i));
    Vec4 f;
    if (dirichlet && ed.is_boundary()) {
      const auto& exact = disc.boundary().exact;
      f = integrate_edge(mesh, i, rule, [&](const Vec2& x, double) {
        return fast::normal_flux(exact(x, t), ed.normal, g);
      });
    } else {
      const Vec4& ua = d.cons_points[ed.vertices[0]];
      const Vec4& um = d.cons_points[ed.dof];
      const Vec4& ub = d.cons_points[ed.vertices[1]];
      if (rule.kind == EdgeRuleKind::Lobatto3) {
        f = (ed.length / 6.0) * (fast::normal_flux(ua, ed.normal, g) +
                                 4.0 * fast::normal_flux(um, ed.normal, g) +
                                 fast::normal_flux(ub, ed.normal, g));
      } else {
        f = integrate_edge(mesh, i, rule, [&](const Vec2&, double s) {
          return fast::normal_flux(edge_trace(ua, um, ub, s), ed.normal, g);
        });
      }
    }
    out[ed.elements[0]] -= f;
    if (ed.elements[1] != kNone) out[ed.elements[1]] += f;
  }

  const AreaRule& rule = area_rule();
  const auto& phi = area_basis();
  for (int e = 0; e < mesh.element_count(); ++e) {
    const double area = mesh.element(e).area;
    if (disc.sloped(e)) {
      const auto& dofs = mesh.element(e).dofs;
      const auto& gz = disc.area_grad_z(e);
      Vec2 s = Vec2::Zero();
      for (int q = 0; q < 7; ++q) {
        double ht = field.averages[e][3] * phi[q][6];
        for (int k = 0; k < 6; ++k) ht += d.cons_points[dofs[k]][3] * phi[q][k];
        s += (rule.weights[q] * ht) * gz[q];
      }
      out[e][1] -= g * area * s.x();
      out[e][2] -= g * area * s.y();
    }
    out[e] /= area;
  }
}

Vec4 upwind_solve(const Mat4& k, const Vec4& b) {
  if (!k.allFinite() || !b.allFinite()) {
    return Vec4::Constant(std::numeric_limits<double>::quiet_NaN());
  }
  Eigen::PartialPivLU<Mat4> lu(k);
  if (lu.rcond() > kPseudoInverseCutoff) return lu.solve(b);
  Eigen::JacobiSVD<Mat4> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec4 sigma = svd.singularValues();
  const double cutoff = kPseudoInverseCutoff * sigma[0];
  Vec4 y = svd.matrixU().transpose() * b;
  for (int i = 0; i < 4; ++i) y[i] = sigma[i] > cutoff ? y[i] / sigma[i] : 0.0;
  return svd.matrixV() * y;
}

void point_value_rhs(const Discretization& disc, const SolutionField& field, const Derived& d,
                     std::span<Vec4> out, Workspace& ws) {
  const Mesh& mesh = disc.mesh();
  const double g = disc.params().g;
  const VariableSet set = disc.variables();
  const int nd = mesh.dof_count();
  ws.residual.assign(nd, Vec4::Zero());
  ws.weight.assign(nd, Mat4::Zero());

  std::array<Vec4, 7> v;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& dofs = mesh.element(e).dofs;
    for (int k = 0; k < 6; ++k) v[k] = field.points[dofs[k]];
    v[6] = d.var_centroids[e];
    const FdStencil& st = disc.stencil(e);
    const auto& zn = disc.z_nodes(e);
    const auto& gz = disc.grad_z(e);
    const auto& gz2 = disc.grad_z2(e);
    const auto& nrm = disc.normals(e);
    for (int j = 0; j < 6; ++j) {
      const auto grad = st.gradient(v, j);
      const Vec4 r = fast::apply_jacobian(set, v[j], grad[0], grad[1], g) -
                     fast::split_source(set, v[j], zn[j], gz[j], gz2[j], g);
      const Mat4 kp = fast::k_plus(set, v[j], nrm[j], g);
      ws.residual[dofs[j]] += kp * r;
      ws.weight[dofs[j]] += kp;
    }
  }

  const bool dirichlet = disc.boundary().kind == BoundaryKind::Dirichlet;
  for (int s = 0; s < nd; ++s) {
    if (dirichlet && mesh.is_boundary_dof(s)) {
      out[s].setZero();
      continue;
    }
    out[s] = -upwind_solve(ws.weight[s], ws.residual[s]);
    if (mesh.is_boundary_dof(s)) {
      // No element upstream of the incoming characteristics: the outside
      // state is extrapolated unchanged.
      out[s] -= fast::incoming_projector(set, field.points[s], disc.boundary_normal(s), g) * out[s];
    }
  }
}

void assemble_rhs(const Discretization& disc, const SolutionField& field, double t, Rhs& out,
                  Workspace& ws) {
  derive(disc, field, ws.derived);
  out.points.resize(field.points.size());
  out.averages.resize(field.averages.size());
  cell_average_rhs(disc, field, ws.derived, t, out.averages);
  point_value_rhs(disc, field, ws.derived, out.points, ws);
}

Rhs assemble_rhs(const Discretization& disc, const SolutionField& field, double t) {
  Rhs out;
  Workspace ws;
  assemble_rhs(disc, field, t, out, ws);
  return out;
}

void apply_boundary(const Discretization& disc, SolutionField& field, double t) {
  if (disc.boundary().kind != BoundaryKind::Dirichlet) return;
  const Mesh& mesh = disc.mesh();
  for (int s = 0; s < mesh.dof_count(); ++s) {
    if (!mesh.is_boundary_dof(s)) continue;
    field.points[s] = fast::to_vars(disc.variables(), disc.boundary().exact(mesh.dof_position(s), t));
  }
}

}  // namespace pampa
