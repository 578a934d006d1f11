#pragma once

#include "pampa/types.hpp"

namespace pampa {

struct Params {
  double g = 9.812;
};

/// Variable set evolved by the point-value update.
enum class VariableSet {
  Pmt,   // (p = h^2 theta, hu, hv, theta)
  Prim,  // (h, u, v, theta)
};

/// Columns are the x- and y-fluxes.
using FluxTensor = Eigen::Matrix<double, 4, 2>;

struct Jacobians {
  Mat4 a;
  Mat4 b;
};

struct KDecomposition {
  Mat4 k;
  Mat4 plus;
  Mat4 minus;
};

/// Throws InvariantDomainError unless h > floor and theta > floor.
void check_conservative(const Vec4& u);

FluxTensor flux(const Vec4& u, double g);

Vec4 to_pmt(const Vec4& u);
Vec4 from_pmt(const Vec4& v);
Vec4 to_prim(const Vec4& u);
Vec4 from_prim(const Vec4& q);

Vec4 to_vars(VariableSet set, const Vec4& u);
Vec4 from_vars(VariableSet set, const Vec4& v);

Jacobians jacobians_pmt(const Vec4& v, double g);
Jacobians jacobians_prim(const Vec4& q, double g);
Jacobians jacobians(VariableSet set, const Vec4& v, double g);

/// Well-balanced split source in pmt variables, w = h + z.
Vec4 split_source_pmt(const Vec4& v, double z, const Vec2& grad_z, const Vec2& grad_z2, double g);
/// (0, -g theta grad Z, 0) in primitive variables.
Vec4 source_prim(const Vec4& q, const Vec2& grad_z, double g);

/// K = A n_x + B n_y and its positive and negative parts. Throws
/// HyperbolicityError when no real eigenbasis is found.
KDecomposition k_decompose(const Vec4& v, const Vec2& n, double g, VariableSet set);

/// rho(J.n) = |nu.n| + sqrt(g h theta) for unit n.
double max_wave_speed(const Vec4& u, const Vec2& n, double g);

/// Inner-loop variants. No validation: inadmissible states produce
/// non-finite results instead of exceptions.
namespace fast {

inline Vec4 to_pmt(const Vec4& u) { return {u[0] * u[3], u[1], u[2], u[3] / u[0]}; }

inline Vec4 from_pmt(const Vec4& v) {
  return {std::sqrt(v[0] / v[3]), v[1], v[2], std::sqrt(v[0] * v[3])};
}

inline Vec4 to_prim(const Vec4& u) { return {u[0], u[1] / u[0], u[2] / u[0], u[3] / u[0]}; }

inline Vec4 from_prim(const Vec4& q) { return {q[0], q[0] * q[1], q[0] * q[2], q[0] * q[3]}; }

inline Vec4 to_vars(VariableSet set, const Vec4& u) {
  return set == VariableSet::Pmt ? to_pmt(u) : to_prim(u);
}

inline Vec4 from_vars(VariableSet set, const Vec4& v) {
  return set == VariableSet::Pmt ? from_pmt(v) : from_prim(v);
}

/// f(u).n for a conservative state and any (scaled) normal.
inline Vec4 normal_flux(const Vec4& u, const Vec2& n, double g) {
  const double un = (u[1] * n.x() + u[2] * n.y()) / u[0];
  const double pressure = 0.5 * g * u[0] * u[3];
  return {u[0] * un, u[1] * un + pressure * n.x(), u[2] * un + pressure * n.y(), u[3] * un};
}

/// Velocity (u, v) and sound speed c = sqrt(g h theta) of a state in the
/// given variable set.
struct Waves {
  double u;
  double v;
  double c;
};

Waves waves(VariableSet set, const Vec4& v, double g);

/// J(v) applied to a gradient: A dx + B dy, without forming the matrices.
Vec4 apply_jacobian(VariableSet set, const Vec4& v, const Vec4& dx, const Vec4& dy, double g);

/// S tilde at one node.
Vec4 split_source(VariableSet set, const Vec4& v, double z, const Vec2& grad_z,
                  const Vec2& grad_z2, double g);

/// Closed-form positive part of K = J(v).n. NaN entries when c is not a
/// positive finite number.
Mat4 k_plus(VariableSet set, const Vec4& v, const Vec2& n, double g);

/// Closed-form K plus and minus parts.
void k_parts(VariableSet set, const Vec4& v, const Vec2& n, double g, Mat4& plus, Mat4& minus);

/// Projector onto the characteristic fields with speed < 0 along n, in the
/// variables of `set`. NaN under the same conditions as k_plus.
Mat4 incoming_projector(VariableSet set, const Vec4& v, const Vec2& n, double g);

}  // namespace fast

}  // namespace pampa
