#pragma once

#include "pampa/mesh.hpp"

#include <array>
#include <functional>
#include <vector>

namespace pampa {

/// Basis functions of the PAMPA element as functions of barycentric
/// coordinates. `pampa` is the reconstruction basis (six boundary DoFs plus
/// the cell average), `lagrange` the interpolation basis through the six
/// boundary DoFs and the centroid used by the finite-difference operator.
namespace basis {

inline constexpr double kLambdaTolerance = 1e-12;

/// Throws std::invalid_argument if lambda is not a barycentric point of the
/// closed element within kLambdaTolerance.
void check_barycentric(const Vec3& lambda);

std::array<double, 7> pampa(const Vec3& lambda);
std::array<double, 7> lagrange(const Vec3& lambda);

/// Physical gradients, given the gradients of the barycentric coordinates.
std::array<Vec2, 7> pampa_gradients(const Vec3& lambda, const std::array<Vec2, 3>& grad_lambda);
std::array<Vec2, 7> lagrange_gradients(const Vec3& lambda, const std::array<Vec2, 3>& grad_lambda);

/// Barycentric coordinates of the local nodes 0..5 and the centroid (6).
const std::array<Vec3, 7>& nodes();

}  // namespace basis

/// Point values at every DoF plus one average per element.
template <class T>
struct Field {
  std::vector<T> points;
  std::vector<T> averages;
};

using ScalarField = Field<double>;

/// The discrete solution. Averages are conservative (h, hu, hv, h theta);
/// point values are stored in whichever variable set the point update
/// evolves (see VariableSet in model.hpp).
using SolutionField = Field<Vec4>;

/// u_h|E at lambda from the six boundary values and the average.
template <class T>
T reconstruct(const std::array<T, 6>& boundary, const T& average, const Vec3& lambda) {
  auto phi = basis::pampa(lambda);
  T out = average * phi[6];
  for (int i = 0; i < 6; ++i) out += boundary[i] * phi[i];
  return out;
}

/// Value of the reconstruction at the element centroid.
template <class T>
T centroid_value(const std::array<T, 6>& boundary, const T& average) {
  return (20.0 / 9.0) * average - (1.0 / 9.0) * (boundary[0] + boundary[1] + boundary[2]) -
         (8.0 / 27.0) * (boundary[3] + boundary[4] + boundary[5]);
}

/// Gradients of the interpolation basis at the seven nodes of one element.
/// weights[j][i] = grad phi_i at node j (j = 6 is the centroid).
struct FdStencil {
  std::array<std::array<Vec2, 7>, 7> weights;

  static FdStencil of(const Mesh& mesh, int e);

  /// D(v) at node j from the six boundary values and the centroid value.
  template <class T>
  std::array<T, 2> gradient(const std::array<T, 7>& values, int j) const {
    std::array<T, 2> g{values[0] * weights[j][0].x(), values[0] * weights[j][0].y()};
    for (int i = 1; i < 7; ++i) {
      g[0] += values[i] * weights[j][i].x();
      g[1] += values[i] * weights[j][i].y();
    }
    return g;
  }
};

/// Scalar FD gradient as a vector.
Vec2 fd_gradient(const FdStencil& stencil, const std::array<double, 7>& values, int node);

/// How element averages are initialised from a pointwise function.
enum class AverageInit {
  /// Seven-point degree-5 area quadrature of f.
  Quadrature,
  /// The average that makes the reconstruction interpolate f at the
  /// centroid. Keeps pointwise equilibria of nonlinear combinations (such as
  /// p = h^2 theta) exact at the centroid node.
  Centroid,
};

/// Point values f(x_sigma) and element averages of a scalar function.
ScalarField project_function(const std::function<double(const Vec2&)>& f, const Mesh& mesh,
                             AverageInit init = AverageInit::Quadrature);

/// Same for a 4-component state function.
SolutionField project_state(const std::function<Vec4(const Vec2&)>& f, const Mesh& mesh,
                            AverageInit init = AverageInit::Quadrature);

/// Boundary values of element e gathered from a field.
template <class T>
std::array<T, 6> element_values(const Mesh& mesh, const std::vector<T>& points, int e) {
  const auto& d = mesh.element(e).dofs;
  return {points[d[0]], points[d[1]], points[d[2]], points[d[3]], points[d[4]], points[d[5]]};
}

}  // namespace pampa
