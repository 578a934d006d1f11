#include "pampa/fem_space.hpp"

#include "pampa/quadrature.hpp"

#include <stdexcept>

namespace pampa {

namespace basis {

void check_barycentric(const Vec3& lambda) {
  const double sum = lambda.sum();
  bool ok = std::abs(sum - 1.0) <= kLambdaTolerance;
  for (int i = 0; i < 3; ++i) {
    ok = ok && lambda[i] >= -kLambdaTolerance && lambda[i] <= 1.0 + kLambdaTolerance;
  }
  if (!ok) throw std::invalid_argument("barycentric coordinates outside the element");
}

std::array<double, 7> pampa(const Vec3& l) {
  const double b = l[0] * l[1] * l[2];
  return {l[0] * (2 * l[0] - 1),
          l[1] * (2 * l[1] - 1),
          l[2] * (2 * l[2] - 1),
          4 * l[0] * l[1] - 20 * b,
          4 * l[1] * l[2] - 20 * b,
          4 * l[2] * l[0] - 20 * b,
          60 * b};
}

std::array<double, 7> lagrange(const Vec3& l) {
  const double bubble = 27 * l[0] * l[1] * l[2];
  return {l[0] * (2 * l[0] - 1) + bubble / 9,
          l[1] * (2 * l[1] - 1) + bubble / 9,
          l[2] * (2 * l[2] - 1) + bubble / 9,
          4 * l[0] * l[1] - 4 * bubble / 9,
          4 * l[1] * l[2] - 4 * bubble / 9,
          4 * l[2] * l[0] - 4 * bubble / 9,
          bubble};
}

namespace {

// grad(l0 l1 l2)
Vec2 bubble_gradient(const Vec3& l, const std::array<Vec2, 3>& g) {
  return l[1] * l[2] * g[0] + l[0] * l[2] * g[1] + l[0] * l[1] * g[2];
}

}  // namespace

std::array<Vec2, 7> pampa_gradients(const Vec3& l, const std::array<Vec2, 3>& g) {
  const Vec2 gb = bubble_gradient(l, g);
  return {(4 * l[0] - 1) * g[0],
          (4 * l[1] - 1) * g[1],
          (4 * l[2] - 1) * g[2],
          4 * (l[1] * g[0] + l[0] * g[1]) - 20 * gb,
          4 * (l[2] * g[1] + l[1] * g[2]) - 20 * gb,
          4 * (l[0] * g[2] + l[2] * g[0]) - 20 * gb,
          60 * gb};
}

std::array<Vec2, 7> lagrange_gradients(const Vec3& l, const std::array<Vec2, 3>& g) {
  const Vec2 gb = 27 * bubble_gradient(l, g);
  return {(4 * l[0] - 1) * g[0] + gb / 9,
          (4 * l[1] - 1) * g[1] + gb / 9,
          (4 * l[2] - 1) * g[2] + gb / 9,
          4 * (l[1] * g[0] + l[0] * g[1]) - 4 * gb / 9,
          4 * (l[2] * g[1] + l[1] * g[2]) - 4 * gb / 9,
          4 * (l[0] * g[2] + l[2] * g[0]) - 4 * gb / 9,
          gb};
}

const std::array<Vec3, 7>& nodes() {
  static const std::array<Vec3, 7> n{Vec3(1, 0, 0),
                                     Vec3(0, 1, 0),
                                     Vec3(0, 0, 1),
                                     Vec3(0.5, 0.5, 0),
                                     Vec3(0, 0.5, 0.5),
                                     Vec3(0.5, 0, 0.5),
                                     Vec3(1.0 / 3, 1.0 / 3, 1.0 / 3)};
  return n;
}

}  // namespace basis

FdStencil FdStencil::of(const Mesh& mesh, int e) {
  FdStencil s;
  const auto g = mesh.barycentric_gradients(e);
  for (int j = 0; j < 7; ++j) s.weights[j] = basis::lagrange_gradients(basis::nodes()[j], g);
  return s;
}

Vec2 fd_gradient(const FdStencil& stencil, const std::array<double, 7>& values, int node) {
  auto g = stencil.gradient(values, node);
  return {g[0], g[1]};
}

namespace {

template <class T, class F>
Field<T> project(const F& f, const Mesh& mesh, AverageInit init) {
  Field<T> out;
  out.points.resize(mesh.dof_count());
  for (int d = 0; d < mesh.dof_count(); ++d) out.points[d] = f(mesh.dof_position(d));
  out.averages.resize(mesh.element_count());
  const AreaRule& rule = area_rule();
  for (int e = 0; e < mesh.element_count(); ++e) {
    if (init == AverageInit::Quadrature) {
      T acc = rule.weights[0] * f(mesh.point(e, rule.nodes[0]));
      for (std::size_t q = 1; q < rule.nodes.size(); ++q) {
        acc += rule.weights[q] * f(mesh.point(e, rule.nodes[q]));
      }
      out.averages[e] = acc;
    } else {
      auto b = element_values(mesh, out.points, e);
      T center = f(mesh.centroid(e));
      out.averages[e] = (9.0 / 20.0) * (center + (1.0 / 9.0) * (b[0] + b[1] + b[2]) +
                                        (8.0 / 27.0) * (b[3] + b[4] + b[5]));
    }
  }
  return out;
}

}  // namespace

ScalarField project_function(const std::function<double(const Vec2&)>& f, const Mesh& mesh,
                             AverageInit init) {
  return project<double>(f, mesh, init);
}

SolutionField project_state(const std::function<Vec4(const Vec2&)>& f, const Mesh& mesh,
                            AverageInit init) {
  return project<Vec4>(f, mesh, init);
}

}  // namespace pampa
