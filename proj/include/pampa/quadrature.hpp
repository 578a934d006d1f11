#pragma once

#include "pampa/fem_space.hpp"
#include "pampa/mesh.hpp"

#include <array>
#include <type_traits>
#include <vector>

namespace pampa {

enum class EdgeRuleKind { Lobatto3, Legendre5 };

/// Rule on the reference edge [0, 1]; weights sum to 1.
struct EdgeRule {
  EdgeRuleKind kind;
  std::vector<double> nodes;
  std::vector<double> weights;
};

const EdgeRule& edge_rule(EdgeRuleKind kind);

/// Degree-5 seven-point rule in barycentric coordinates; weights sum to 1.
struct AreaRule {
  std::array<Vec3, 7> nodes;
  std::array<double, 7> weights;
};

const AreaRule& area_rule();

/// Choice of edge quadrature for the cell-average update.
enum class WbMode {
  Adaptive,      // Lobatto3 on locally flat bottoms, Legendre5 elsewhere
  LobattoOnly,
  LegendreOnly,
};

inline constexpr double kPlateauEpsilon = 1e-6;

/// True iff max - min of Z over the point and centroid values of every
/// element in the extended neighborhood of e is at most eps.
bool plateau_check(const Mesh& mesh, const ScalarField& z, int e, double eps = kPlateauEpsilon);

EdgeRuleKind select_edge_rule(const Mesh& mesh, const ScalarField& z, int e,
                              double eps = kPlateauEpsilon, WbMode mode = WbMode::Adaptive);

/// Rule per edge. In adaptive mode an edge uses Legendre5 as soon as one of
/// its elements fails the plateau check, so both sides integrate the same
/// flux.
std::vector<EdgeRuleKind> edge_rules(const Mesh& mesh, const ScalarField& z,
                                     double eps = kPlateauEpsilon, WbMode mode = WbMode::Adaptive);

/// length * sum w_q f(x_q, s_q) along the edge from vertices[0] to vertices[1].
template <class F>
auto integrate_edge(const Mesh& mesh, int edge, const EdgeRule& rule, F&& f) {
  const Edge& ed = mesh.edge(edge);
  const Vec2& a = mesh.vertices()[ed.vertices[0]];
  const Vec2& b = mesh.vertices()[ed.vertices[1]];
  using R = std::decay_t<decltype(f(a, 0.0))>;
  R acc = rule.weights[0] * f(Vec2(a + rule.nodes[0] * (b - a)), rule.nodes[0]);
  for (std::size_t q = 1; q < rule.nodes.size(); ++q) {
    acc += rule.weights[q] * f(Vec2(a + rule.nodes[q] * (b - a)), rule.nodes[q]);
  }
  return R(ed.length * acc);
}

/// |E| * sum w_q f(lambda_q).
template <class F>
auto integrate_area(const Mesh& mesh, int e, const AreaRule& rule, F&& f) {
  using R = std::decay_t<decltype(f(rule.nodes[0]))>;
  R acc = rule.weights[0] * f(rule.nodes[0]);
  for (std::size_t q = 1; q < rule.nodes.size(); ++q) acc += rule.weights[q] * f(rule.nodes[q]);
  return R(mesh.element(e).area * acc);
}

}  // namespace pampa
