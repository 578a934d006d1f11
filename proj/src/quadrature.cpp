#include "pampa/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace pampa {

const EdgeRule& edge_rule(EdgeRuleKind kind) {
  static const EdgeRule lobatto{EdgeRuleKind::Lobatto3, {0.0, 0.5, 1.0},
                                {1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0}};
  static const EdgeRule legendre = [] {
    const double x1 = 0.5384693101056831;
    const double x2 = 0.9061798459386640;
    const double w0 = 128.0 / 225.0;
    const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    return EdgeRule{EdgeRuleKind::Legendre5,
                    {0.5 * (1 - x2), 0.5 * (1 - x1), 0.5, 0.5 * (1 + x1), 0.5 * (1 + x2)},
                    {0.5 * w2, 0.5 * w1, 0.5 * w0, 0.5 * w1, 0.5 * w2}};
  }();
  return kind == EdgeRuleKind::Lobatto3 ? lobatto : legendre;
}

const AreaRule& area_rule() {
  static const AreaRule rule = [] {
    const double a1 = 0.101286507323456338800987361915123;
    const double b1 = 0.797426985353087322398025276169754;
    const double w1 = 0.125939180544827152595683945500181;
    const double a2 = 0.470142064105115089770441209513447;
    const double b2 = 0.059715871789769820459117580973106;
    const double w2 = 0.132394152788506180737649387833152;
    AreaRule r;
    r.nodes = {Vec3(1.0 / 3, 1.0 / 3, 1.0 / 3), Vec3(b1, a1, a1), Vec3(a1, b1, a1),
               Vec3(a1, a1, b1), Vec3(b2, a2, a2), Vec3(a2, b2, a2), Vec3(a2, a2, b2)};
    r.weights = {0.225, w1, w1, w1, w2, w2, w2};
    return r;
  }();
  return rule;
}

namespace {

std::pair<double, double> element_range(const Mesh& mesh, const ScalarField& z, int e) {
  auto b = element_values(mesh, z.points, e);
  double lo = centroid_value(b, z.averages[e]);
  double hi = lo;
  for (double v : b) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

bool plateau(const std::vector<std::pair<double, double>>& ranges,
             const std::vector<int>& cells, double eps) {
  double lo = ranges[cells[0]].first, hi = ranges[cells[0]].second;
  for (int c : cells) {
    lo = std::min(lo, ranges[c].first);
    hi = std::max(hi, ranges[c].second);
  }
  return hi - lo <= eps;
}

}  // namespace

bool plateau_check(const Mesh& mesh, const ScalarField& z, int e, double eps) {
  const auto cells = mesh.extended_neighborhood(e);
  double lo = 0, hi = 0;
  bool first = true;
  for (int c : cells) {
    auto [a, b] = element_range(mesh, z, c);
    lo = first ? a : std::min(lo, a);
    hi = first ? b : std::max(hi, b);
    first = false;
  }
  return hi - lo <= eps;
}

EdgeRuleKind select_edge_rule(const Mesh& mesh, const ScalarField& z, int e, double eps,
                              WbMode mode) {
  switch (mode) {
    case WbMode::LobattoOnly: return EdgeRuleKind::Lobatto3;
    case WbMode::LegendreOnly: return EdgeRuleKind::Legendre5;
    case WbMode::Adaptive: break;
  }
  return plateau_check(mesh, z, e, eps) ? EdgeRuleKind::Lobatto3 : EdgeRuleKind::Legendre5;
}

std::vector<EdgeRuleKind> edge_rules(const Mesh& mesh, const ScalarField& z, double eps,
                                     WbMode mode) {
  if (mode != WbMode::Adaptive) {
    return std::vector<EdgeRuleKind>(mesh.edge_count(), mode == WbMode::LobattoOnly
                                                            ? EdgeRuleKind::Lobatto3
                                                            : EdgeRuleKind::Legendre5);
  }
  std::vector<std::pair<double, double>> ranges(mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) ranges[e] = element_range(mesh, z, e);
  std::vector<char> flat(mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) {
    flat[e] = plateau(ranges, mesh.extended_neighborhood(e), eps);
  }
  std::vector<EdgeRuleKind> rules(mesh.edge_count());
  for (int i = 0; i < mesh.edge_count(); ++i) {
    const Edge& ed = mesh.edge(i);
    bool ok = flat[ed.elements[0]] && (ed.elements[1] == kNone || flat[ed.elements[1]]);
    rules[i] = ok ? EdgeRuleKind::Lobatto3 : EdgeRuleKind::Legendre5;
  }
  return rules;
}

}  // namespace pampa
