#pragma once

#include "pampa/cases.hpp"
#include "pampa/mesh.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace pampa::test {

inline Mesh reference_triangle() {
  return Mesh::build({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
}

/// One triangle with vertices drawn from [-2, 2]^2, rejecting slivers.
inline Mesh random_triangle(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  while (true) {
    std::vector<Vec2> v{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    const double area = 0.5 * std::abs((v[1] - v[0]).x() * (v[2] - v[0]).y() -
                                       (v[2] - v[0]).x() * (v[1] - v[0]).y());
    double longest = 0.0;
    for (int k = 0; k < 3; ++k) longest = std::max(longest, (v[(k + 1) % 3] - v[k]).norm());
    if (area > 0.05 * longest * longest) return Mesh::build(std::move(v), {{0, 1, 2}});
  }
}

/// A state in the invariant domain with moderate Froude number.
inline Vec4 random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> h(0.5, 2.0), vel(-1.0, 1.0), th(0.5, 1.5);
  const double d = h(rng), t = th(rng);
  return {d, d * vel(rng), d * vel(rng), d * t};
}

inline Vec2 random_unit(std::mt19937& rng) {
  std::uniform_real_distribution<double> a(0.0, 2.0 * M_PI);
  const double phi = a(rng);
  return {std::cos(phi), std::sin(phi)};
}

inline Mesh jittered_square(int n, double jitter, unsigned seed) {
  return rectangle_mesh({0.0, 1.0, 0.0, 1.0}, n, n, jitter, seed);
}

inline double max_abs(const std::vector<Vec4>& v) {
  double m = 0.0;
  for (const Vec4& x : v) m = std::max(m, x.cwiseAbs().maxCoeff());
  return m;
}

}  // namespace pampa::test
