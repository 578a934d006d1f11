#pragma once

#include "pampa/scheme_high.hpp"

#include <array>
#include <span>

namespace pampa {

/// Local Lax-Friedrichs flux through a scaled normal n (the caller applies
/// the edge length). Throws InvariantDomainError for inadmissible states.
Vec4 lf_flux(const Vec4& a1, const Vec4& a2, const Vec2& n, double g);

/// One of the six sub-triangles (s_i, s_{i+1}, c) of an element. Node
/// indices are local: 0..5 boundary DoFs, 6 the centroid.
struct SubTriangle {
  std::array<int, 3> nodes;
  double area;
  /// Inward normal opposite each node, scaled by the opposite side length.
  std::array<Vec2, 3> normals;
};

/// Boundary nodes are visited v0, m0, v1, m1, v2, m2.
std::array<SubTriangle, 6> sub_triangles(const Mesh& mesh, int e);

/// First-order average update. With a non-empty mask only masked elements
/// are written.
void cell_average_rhs_low(const Discretization& disc, const SolutionField& field, double t,
                          std::span<Vec4> out, std::span<const char> element_mask = {});

/// Sub-element residuals of element e distributed to its six boundary
/// nodes, before division by the dual volume.
std::array<Vec4, 6> sub_cell_residuals(const Discretization& disc, const SolutionField& field,
                                       int e);

/// First-order point update. With a non-empty mask only masked DoFs are
/// written.
void point_value_rhs_low(const Discretization& disc, const SolutionField& field,
                         std::span<Vec4> out, std::span<const char> dof_mask = {});

void assemble_rhs_low(const Discretization& disc, const SolutionField& field, double t, Rhs& out,
                      std::span<const char> element_mask = {},
                      std::span<const char> dof_mask = {});

}  // namespace pampa
