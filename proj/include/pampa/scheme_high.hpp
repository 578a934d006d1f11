#pragma once

#include "pampa/fem_space.hpp"
#include "pampa/mesh.hpp"
#include "pampa/model.hpp"
#include "pampa/quadrature.hpp"

#include <functional>
#include <span>
#include <vector>

namespace pampa {

/// Conservative state as a function of position and time.
using StateFunction = std::function<Vec4(const Vec2& x, double t)>;

enum class BoundaryKind {
  Extrapolation,  // the interior trace is used on boundary edges
  Dirichlet,      // exact state on boundary edges and boundary DoFs
};

struct Boundary {
  BoundaryKind kind = BoundaryKind::Extrapolation;
  StateFunction exact;  // required for Dirichlet
};

struct SchemeOptions {
  WbMode wb_mode = WbMode::Adaptive;
  VariableSet variables = VariableSet::Pmt;
  double plateau_epsilon = kPlateauEpsilon;
};

/// Time derivative of every point value (in the evolved variable set) and
/// every cell average (conservative).
using Rhs = Field<Vec4>;

/// Geometry and bathymetry data shared by all RHS evaluations on one mesh.
/// Holds a reference to the mesh, which must outlive it.
class Discretization {
 public:
  Discretization(const Mesh& mesh, ScalarField z, Params params, SchemeOptions options,
                 Boundary boundary = {});

  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] const Params& params() const { return params_; }
  [[nodiscard]] const SchemeOptions& options() const { return options_; }
  [[nodiscard]] const Boundary& boundary() const { return boundary_; }
  [[nodiscard]] VariableSet variables() const { return options_.variables; }
  [[nodiscard]] const ScalarField& z() const { return z_; }

  [[nodiscard]] const FdStencil& stencil(int e) const { return stencils_[e]; }
  [[nodiscard]] const DofNormals& normals(int e) const { return normals_[e]; }
  /// sum_E n_sigma^E at domain-boundary DoFs (pointing out of the domain),
  /// zero elsewhere.
  [[nodiscard]] const Vec2& boundary_normal(int dof) const { return boundary_normals_[dof]; }
  /// Z at the six boundary nodes and the centroid.
  [[nodiscard]] const std::array<double, 7>& z_nodes(int e) const { return z_nodes_[e]; }
  /// D(Z) and D(Z^2) at the six boundary nodes.
  [[nodiscard]] const std::array<Vec2, 6>& grad_z(int e) const { return grad_z_[e]; }
  [[nodiscard]] const std::array<Vec2, 6>& grad_z2(int e) const { return grad_z2_[e]; }
  /// grad Z_h at the area quadrature nodes.
  [[nodiscard]] const std::array<Vec2, 7>& area_grad_z(int e) const { return area_grad_z_[e]; }
  [[nodiscard]] bool sloped(int e) const { return sloped_[e] != 0; }
  [[nodiscard]] EdgeRuleKind edge_rule_of(int edge) const { return edge_rules_[edge]; }
  [[nodiscard]] const std::vector<EdgeRuleKind>& edge_rules() const { return edge_rules_; }

 private:
  const Mesh* mesh_;
  ScalarField z_;
  Params params_;
  SchemeOptions options_;
  Boundary boundary_;
  std::vector<FdStencil> stencils_;
  std::vector<DofNormals> normals_;
  std::vector<Vec2> boundary_normals_;
  std::vector<std::array<double, 7>> z_nodes_;
  std::vector<std::array<Vec2, 6>> grad_z_;
  std::vector<std::array<Vec2, 6>> grad_z2_;
  std::vector<std::array<Vec2, 7>> area_grad_z_;
  std::vector<char> sloped_;
  std::vector<EdgeRuleKind> edge_rules_;
};

/// Conservative point values and centroid states derived from a field.
struct Derived {
  std::vector<Vec4> cons_points;
  std::vector<Vec4> cons_centroids;
  std::vector<Vec4> var_centroids;
};

/// Fills `out` for `field`. Unchecked: inadmissible states give non-finite
/// values.
void derive(const Discretization& disc, const SolutionField& field, Derived& out);

/// Scratch space reused across RHS evaluations.
struct Workspace {
  Derived derived;
  std::vector<Vec4> residual;
  std::vector<Mat4> weight;
};

/// d(average)/dt for every element.
void cell_average_rhs(const Discretization& disc, const SolutionField& field, const Derived& d,
                      double t, std::span<Vec4> out);

/// d(point value)/dt for every DoF. Boundary DoFs under Dirichlet treatment
/// get zero (they are imposed).
void point_value_rhs(const Discretization& disc, const SolutionField& field, const Derived& d,
                     std::span<Vec4> out, Workspace& ws);

/// Both parts. Recomputes ws.derived from the field.
void assemble_rhs(const Discretization& disc, const SolutionField& field, double t, Rhs& out,
                  Workspace& ws);

Rhs assemble_rhs(const Discretization& disc, const SolutionField& field, double t);

/// Overwrites boundary DoFs with the exact state under Dirichlet treatment.
void apply_boundary(const Discretization& disc, SolutionField& field, double t);

/// N = (sum K+)^-1 applied to b. LU when well conditioned, otherwise the
/// SVD pseudo-inverse with relative cutoff kPseudoInverseCutoff.
inline constexpr double kPseudoInverseCutoff = 1e-12;
Vec4 upwind_solve(const Mat4& sum_kplus, const Vec4& b);

}  // namespace pampa
