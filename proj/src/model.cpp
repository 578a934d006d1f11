#include "pampa/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace pampa {

namespace {

std::string describe(const Vec4& x) {
  return "(" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ", " + std::to_string(x[2]) +
         ", " + std::to_string(x[3]) + ")";
}

bool finite(const Vec4& x) { return x.allFinite(); }

void check_pmt(const Vec4& v) {
  if (!finite(v) || !(v[0] > kDepthFloor * kDepthFloor * kTemperatureFloor) ||
      !(v[3] > kTemperatureFloor)) {
    throw InvariantDomainError("pmt state outside invariant domain " + describe(v));
  }
}

void check_prim(const Vec4& q) {
  if (!finite(q) || !(q[0] > kDepthFloor) || !(q[3] > kTemperatureFloor)) {
    throw InvariantDomainError("primitive state outside invariant domain " + describe(q));
  }
}

void check_vars(VariableSet set, const Vec4& v) {
  if (set == VariableSet::Pmt) {
    check_pmt(v);
    check_conservative(fast::from_pmt(v));
  } else {
    check_prim(v);
  }
}

struct Primitive {
  double h, u, v, theta;
};

Primitive primitive(VariableSet set, const Vec4& x) {
  if (set == VariableSet::Pmt) {
    const double h = std::sqrt(x[0] / x[3]);
    return {h, x[1] / h, x[2] / h, x[3]};
  }
  return {x[0], x[1], x[2], x[3]};
}

}  // namespace

void check_conservative(const Vec4& u) {
  if (!finite(u) || !(u[0] > kDepthFloor) || !(u[3] > kTemperatureFloor * u[0])) {
    throw InvariantDomainError("conservative state outside invariant domain " + describe(u));
  }
}

FluxTensor flux(const Vec4& u, double g) {
  check_conservative(u);
  FluxTensor f;
  f.col(0) = fast::normal_flux(u, Vec2(1, 0), g);
  f.col(1) = fast::normal_flux(u, Vec2(0, 1), g);
  return f;
}

Vec4 to_pmt(const Vec4& u) {
  check_conservative(u);
  return fast::to_pmt(u);
}

Vec4 from_pmt(const Vec4& v) {
  check_pmt(v);
  Vec4 u = fast::from_pmt(v);
  check_conservative(u);
  return u;
}

Vec4 to_prim(const Vec4& u) {
  check_conservative(u);
  return fast::to_prim(u);
}

Vec4 from_prim(const Vec4& q) {
  check_prim(q);
  return fast::from_prim(q);
}

Vec4 to_vars(VariableSet set, const Vec4& u) {
  return set == VariableSet::Pmt ? to_pmt(u) : to_prim(u);
}

Vec4 from_vars(VariableSet set, const Vec4& v) {
  return set == VariableSet::Pmt ? from_pmt(v) : from_prim(v);
}

Jacobians jacobians_pmt(const Vec4& x, double g) {
  check_vars(VariableSet::Pmt, x);
  const auto [h, u, v, t] = primitive(VariableSet::Pmt, x);
  const double ht = h * t;
  Jacobians j;
  j.a << 0, 2 * ht, 0, h * h * u,
      0.5 * (g - u * u / ht), 2 * u, 0, h * u * u / (2 * t),
      -u * v / (2 * ht), v, u, h * u * v / (2 * t),
      0, 0, 0, u;
  j.b << 0, 0, 2 * ht, h * h * v,
      -u * v / (2 * ht), v, u, h * u * v / (2 * t),
      0.5 * (g - v * v / ht), 0, 2 * v, h * v * v / (2 * t),
      0, 0, 0, v;
  return j;
}

Jacobians jacobians_prim(const Vec4& q, double g) {
  check_prim(q);
  const double h = q[0], u = q[1], v = q[2], t = q[3];
  Jacobians j;
  j.a << u, h, 0, 0,
      g * t, u, 0, g * h / 2,
      0, 0, u, 0,
      0, 0, 0, u;
  j.b << v, 0, h, 0,
      0, v, 0, 0,
      g * t, 0, v, g * h / 2,
      0, 0, 0, v;
  return j;
}

Jacobians jacobians(VariableSet set, const Vec4& v, double g) {
  return set == VariableSet::Pmt ? jacobians_pmt(v, g) : jacobians_prim(v, g);
}

Vec4 split_source_pmt(const Vec4& v, double z, const Vec2& grad_z, const Vec2& grad_z2,
                      double g) {
  check_vars(VariableSet::Pmt, v);
  return fast::split_source(VariableSet::Pmt, v, z, grad_z, grad_z2, g);
}

Vec4 source_prim(const Vec4& q, const Vec2& grad_z, double g) {
  check_prim(q);
  return fast::split_source(VariableSet::Prim, q, 0.0, grad_z, Vec2::Zero(), g);
}

KDecomposition k_decompose(const Vec4& v, const Vec2& n, double g, VariableSet set) {
  check_vars(set, v);
  if (!(n.norm() > 0.0) || !n.allFinite()) throw std::invalid_argument("zero normal");
  const Jacobians j = jacobians(set, v, g);
  KDecomposition out;
  out.k = j.a * n.x() + j.b * n.y();
  fast::k_parts(set, v, n, g, out.plus, out.minus);

  const double scale = std::max(out.k.norm(), 1.0);
  if (out.plus.allFinite() && out.minus.allFinite() &&
      (out.plus + out.minus - out.k).norm() <= 1e-10 * scale) {
    return out;
  }

  // Generic path for states where the closed form loses accuracy.
  Eigen::EigenSolver<Mat4> es(out.k);
  if (es.info() != Eigen::Success) throw HyperbolicityError("eigensolver failed");
  const Eigen::Vector4cd lambda = es.eigenvalues();
  const Eigen::Matrix4cd r = es.eigenvectors();
  if (lambda.imag().cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw HyperbolicityError("complex eigenvalues of J.n");
  }
  Eigen::FullPivLU<Eigen::Matrix4cd> lu(r);
  if (!lu.isInvertible() || lu.rcond() < 1e-10) {
    throw HyperbolicityError("J.n is not diagonalizable");
  }
  const Eigen::Matrix4cd rinv = lu.inverse();
  Eigen::Vector4cd lp, lm;
  for (int i = 0; i < 4; ++i) {
    lp[i] = std::max(lambda[i].real(), 0.0);
    lm[i] = std::min(lambda[i].real(), 0.0);
  }
  out.plus = (r * lp.asDiagonal() * rinv).real();
  out.minus = (r * lm.asDiagonal() * rinv).real();
  return out;
}

double max_wave_speed(const Vec4& u, const Vec2& n, double g) {
  check_conservative(u);
  return std::abs((u[1] * n.x() + u[2] * n.y()) / u[0]) + std::sqrt(g * u[3]);
}

namespace fast {

Waves waves(VariableSet set, const Vec4& x, double g) {
  const auto [h, u, v, t] = primitive(set, x);
  return {u, v, std::sqrt(g * h * t)};
}

Vec4 apply_jacobian(VariableSet set, const Vec4& x, const Vec4& dx, const Vec4& dy, double g) {
  const auto [h, u, v, t] = primitive(set, x);
  if (set == VariableSet::Pmt) {
    const double ht = h * t;
    const double px = 0.5 * g * dx[0];
    const double py = 0.5 * g * dy[0];
    const double adv_px = -u * u / (2 * ht) * dx[0] - u * v / (2 * ht) * dy[0];
    const double adv_py = -u * v / (2 * ht) * dx[0] - v * v / (2 * ht) * dy[0];
    const double dtheta = u * dx[3] + v * dy[3];
    return {2 * ht * (dx[1] + dy[2]) + h * h * dtheta,
            px + adv_px + 2 * u * dx[1] + v * dy[1] + u * dy[2] + h * u * dtheta / (2 * t),
            py + adv_py + v * dx[1] + u * dx[2] + 2 * v * dy[2] + h * v * dtheta / (2 * t),
            dtheta};
  }
  return {u * dx[0] + h * dx[1] + v * dy[0] + h * dy[2],
          g * t * dx[0] + u * dx[1] + 0.5 * g * h * dx[3] + v * dy[1],
          u * dx[2] + g * t * dy[0] + v * dy[2] + 0.5 * g * h * dy[3],
          u * dx[3] + v * dy[3]};
}

Vec4 split_source(VariableSet set, const Vec4& x, double z, const Vec2& grad_z,
                  const Vec2& grad_z2, double g) {
  const auto [h, u, v, t] = primitive(set, x);
  if (set == VariableSet::Pmt) {
    const double w = h + z;
    const Vec2 s = 0.5 * g * t * grad_z2 - g * w * t * grad_z;
    return {0.0, s.x(), s.y(), 0.0};
  }
  return {0.0, -g * t * grad_z.x(), -g * t * grad_z.y(), 0.0};
}

namespace {

// Acoustic eigenvectors r+, r-, and left eigenvectors l+, l- normalized
// so that l.r = 1, for unit normal nh.
struct Acoustic {
  Vec4 rp, rm, lp, lm;
};

Acoustic acoustic(VariableSet set, const Primitive& s, double c, const Vec2& nh) {
  const double unh = s.u * nh.x() + s.v * nh.y();
  Acoustic a;
  if (set == VariableSet::Pmt) {
    const double h = s.h, t = s.theta;
    a.rp = {2 * h * h * t, h * (s.u + c * nh.x()), h * (s.v + c * nh.y()), 0.0};
    a.rm = {2 * h * h * t, h * (s.u - c * nh.x()), h * (s.v - c * nh.y()), 0.0};
    const double q = 1.0 / (4 * h * h * t);
    const double m = 1.0 / (2 * c * h);
    const double th = unh / (4 * c * t);
    a.lp = {(1 - unh / c) * q, nh.x() * m, nh.y() * m, th};
    a.lm = {(1 + unh / c) * q, -nh.x() * m, -nh.y() * m, -th};
  } else {
    a.rp = {s.h, c * nh.x(), c * nh.y(), 0.0};
    a.rm = {s.h, -c * nh.x(), -c * nh.y(), 0.0};
    const double q = 1.0 / (2 * s.h);
    const double m = 1.0 / (2 * c);
    const double th = 1.0 / (4 * s.theta);
    a.lp = {q, nh.x() * m, nh.y() * m, th};
    a.lm = {q, -nh.x() * m, -nh.y() * m, th};
  }
  return a;
}

}  // namespace

namespace {

struct Split {
  bool ok;
  double l0, lp, lm;
  Mat4 pp, pm;
};

Split split(VariableSet set, const Vec4& x, const Vec2& n, double g) {
  const Primitive s = primitive(set, x);
  const double c = std::sqrt(g * s.h * s.theta);
  const double len = n.norm();
  Split out{};
  out.ok = c > 0.0 && std::isfinite(c) && len > 0.0;
  if (!out.ok) return out;
  const Vec2 nh = n / len;
  const double unh = s.u * nh.x() + s.v * nh.y();
  out.l0 = len * unh;
  out.lp = len * (unh + c);
  out.lm = len * (unh - c);
  const Acoustic a = acoustic(set, s, c, nh);
  out.pp = a.rp * a.lp.transpose();
  out.pm = a.rm * a.lm.transpose();
  return out;
}

template <class Clip>
Mat4 part(const Split& s, Clip clip) {
  const double l0 = clip(s.l0);
  Mat4 out = (clip(s.lp) - l0) * s.pp + (clip(s.lm) - l0) * s.pm;
  out.diagonal().array() += l0;
  return out;
}

constexpr auto kPos = [](double x) { return std::max(x, 0.0); };
constexpr auto kNeg = [](double x) { return std::min(x, 0.0); };

}  // namespace

void k_parts(VariableSet set, const Vec4& x, const Vec2& n, double g, Mat4& plus, Mat4& minus) {
  const Split s = split(set, x, n, g);
  if (!s.ok) {
    plus.setConstant(std::numeric_limits<double>::quiet_NaN());
    minus = plus;
    return;
  }
  plus = part(s, kPos);
  minus = part(s, kNeg);
}

Mat4 k_plus(VariableSet set, const Vec4& x, const Vec2& n, double g) {
  const Split s = split(set, x, n, g);
  if (!s.ok) return Mat4::Constant(std::numeric_limits<double>::quiet_NaN());
  return part(s, kPos);
}

Mat4 incoming_projector(VariableSet set, const Vec4& x, const Vec2& n, double g) {
  const Split s = split(set, x, n, g);
  if (!s.ok) return Mat4::Constant(std::numeric_limits<double>::quiet_NaN());
  return part(s, [](double l) { return l < 0.0 ? 1.0 : 0.0; });
}

}  // namespace fast

}  // namespace pampa
