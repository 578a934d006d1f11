#include "pampa/model.hpp"

#include "support.hpp"

#include <algorithm>

namespace pampa {
namespace {

using Mat = Eigen::Matrix4d;

std::array<double, 4> sorted_real_eigenvalues(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m);
  std::array<double, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()[i].real();
  std::sort(out.begin(), out.end());
  return out;
}

// Central finite differences of a map R^4 -> R^4.
template <class F>
Mat fd_jacobian(const F& f, const Vec4& x) {
  Mat j;
  for (int k = 0; k < 4; ++k) {
    const double step = 1e-6 * std::max(1.0, std::abs(x[k]));
    Vec4 a = x, b = x;
    a[k] += step;
    b[k] -= step;
    j.col(k) = (f(a) - f(b)) / (2 * step);
  }
  return j;
}

TEST(Flux, RestStatePressureOnly) {
  const FluxTensor f = flux(Vec4(1, 0, 0, 1), 1.0);
  EXPECT_EQ(Vec4(f.col(0)), Vec4(0, 0.5, 0, 0));
  EXPECT_EQ(Vec4(f.col(1)), Vec4(0, 0, 0.5, 0));
}

TEST(Flux, MovingWarmState) {
  const FluxTensor f = flux(Vec4(2, 2, 0, 4), 1.0);
  EXPECT_EQ(Vec4(f.col(0)), Vec4(2, 6, 0, 4));
  EXPECT_EQ(Vec4(f.col(1)), Vec4(0, 0, 4, 0));
}

TEST(Flux, RotationEquivariance) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec4 u = test::random_state(rng);
    const Vec2 n = test::random_unit(rng);
    Eigen::Matrix2d r;
    r << n.x(), -n.y(), n.y(), n.x();
    Vec4 ur = u;
    ur.segment<2>(1) = r * u.segment<2>(1);
    const FluxTensor f = flux(u, 9.812);
    const FluxTensor fr = flux(ur, 9.812);
    // f(R u).(R n) = R-rotated f(u).n
    const Vec2 m(0.3, -0.8);
    Vec4 lhs = fr * (r * m);
    Vec4 rhs = f * m;
    rhs.segment<2>(1) = r * Vec2(rhs.segment<2>(1));
    EXPECT_LT((lhs - rhs).norm(), 1e-13 * (1 + rhs.norm()));
  }
}

TEST(Flux, RejectsDryState) {
  EXPECT_THROW(flux(Vec4(0, 0, 0, 1), 1.0), InvariantDomainError);
  EXPECT_THROW(flux(Vec4(-1, 0, 0, 1), 1.0), InvariantDomainError);
}

TEST(Variables, PmtExamples) {
  EXPECT_EQ(to_pmt(Vec4(2, 0, 0, 4)), Vec4(8, 0, 0, 2));
  EXPECT_EQ(to_pmt(Vec4(1, 0, 0, 1)), Vec4(1, 0, 0, 1));
  EXPECT_THROW(to_pmt(Vec4(0, 0, 0, 1)), InvariantDomainError);
  EXPECT_THROW(from_pmt(Vec4(1, 0, 0, -1)), InvariantDomainError);
  EXPECT_THROW(from_prim(Vec4(1, 0, 0, 0)), InvariantDomainError);
}

TEST(Variables, RoundTrips) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec4 u = test::random_state(rng);
    EXPECT_LT((from_pmt(to_pmt(u)) - u).norm(), 1e-14 * u.norm());
    EXPECT_LT((from_prim(to_prim(u)) - u).norm(), 1e-14 * u.norm());
  }
}

TEST(Jacobians, PmtRestState) {
  const Jacobians j = jacobians_pmt(Vec4(1, 0, 0, 1), 1.0);
  EXPECT_EQ(Vec4(j.a.row(1)), Vec4(0.5, 0, 0, 0));
  EXPECT_EQ(j.a(0, 1), 2.0);
  const auto l = sorted_real_eigenvalues(j.a);
  const std::array<double, 4> expected{-1, 0, 0, 1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(l[i], expected[i], 1e-14);
}

TEST(Jacobians, PrimRestState) {
  const Jacobians j = jacobians_prim(Vec4(1, 0, 0, 1), 1.0);
  Mat expected;
  expected << 0, 1, 0, 0, 1, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0, 0;
  EXPECT_EQ(j.a, expected);
  EXPECT_THROW(jacobians_prim(Vec4(0, 0, 0, 1), 1.0), InvariantDomainError);
}

TEST(Jacobians, PmtSimilarToConservative) {
  std::mt19937 rng(3);
  const double g = 9.812;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec4 u = test::random_state(rng);
    const Vec2 n = test::random_unit(rng);
    const Mat m = fd_jacobian([](const Vec4& x) { return fast::to_pmt(x); }, u);
    const Mat kc = fd_jacobian([&](const Vec4& x) { return fast::normal_flux(x, n, g); }, u);
    const Jacobians j = jacobians_pmt(to_pmt(u), g);
    const Mat k = j.a * n.x() + j.b * n.y();
    const Mat oracle = m * kc * m.inverse();
    EXPECT_LT((k - oracle).norm(), 1e-6 * k.norm()) << "trial " << trial;
  }
}

TEST(Jacobians, PrimSimilarToConservative) {
  std::mt19937 rng(4);
  const double g = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec4 u = test::random_state(rng);
    const Vec2 n = test::random_unit(rng);
    const Mat m = fd_jacobian([](const Vec4& x) { return fast::to_prim(x); }, u);
    const Mat kc = fd_jacobian([&](const Vec4& x) { return fast::normal_flux(x, n, g); }, u);
    const Jacobians j = jacobians_prim(to_prim(u), g);
    const Mat k = j.a * n.x() + j.b * n.y();
    EXPECT_LT((k - m * kc * m.inverse()).norm(), 1e-6 * k.norm()) << "trial " << trial;
  }
}

TEST(Jacobians, SpectraAgreeAcrossVariableSets) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec4 u = test::random_state(rng);
    const Vec2 n = test::random_unit(rng);
    const Jacobians p = jacobians_pmt(to_pmt(u), 9.812);
    const Jacobians q = jacobians_prim(to_prim(u), 9.812);
    const auto lp = sorted_real_eigenvalues(p.a * n.x() + p.b * n.y());
    const auto lq = sorted_real_eigenvalues(q.a * n.x() + q.b * n.y());
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(lp[i], lq[i], 1e-10 * (1 + std::abs(lq[i])));
  }
}

TEST(Jacobians, ApplyMatchesMatrices) {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (VariableSet set : {VariableSet::Pmt, VariableSet::Prim}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Vec4 v = to_vars(set, test::random_state(rng));
      const Vec4 dx(d(rng), d(rng), d(rng), d(rng)), dy(d(rng), d(rng), d(rng), d(rng));
      const Jacobians j = jacobians(set, v, 9.812);
      const Vec4 expected = j.a * dx + j.b * dy;
      EXPECT_LT((fast::apply_jacobian(set, v, dx, dy, 9.812) - expected).norm(),
                1e-13 * (1 + expected.norm()));
    }
  }
}

TEST(Jacobians, ZeroGravityIsPureTransport) {
  const Jacobians j = jacobians_prim(Vec4(1.5, 0.3, -0.7, 2.0), 0.0);
  for (int i = 1; i < 4; ++i) {
    EXPECT_EQ(j.a(i, i), 0.3);
    EXPECT_EQ(j.b(i, i), -0.7);
  }
  EXPECT_EQ(j.a(1, 0), 0.0);
  EXPECT_EQ(j.a(1, 3), 0.0);
}

TEST(SplitSource, FlatBottomVanishes) {
  EXPECT_EQ(split_source_pmt(Vec4(2, 0.1, 0.2, 1.5), 0.3, Vec2::Zero(), Vec2::Zero(), 9.812),
            Vec4::Zero());
  EXPECT_EQ(source_prim(Vec4(2, 0.1, 0.2, 1.5), Vec2::Zero(), 9.812), Vec4::Zero());
}

TEST(SplitSource, CancelsPressureGradientAtLakeAtRest) {
  // w and theta constant, Z quadratic: D is exact, so the cancellation is
  // exact up to round-off.
  std::mt19937 rng(7);
  const double g = 9.812, w = 3.0, theta = 1.3;
  for (int trial = 0; trial < 20; ++trial) {
    const Mesh m = test::random_triangle(rng);
    const FdStencil st = FdStencil::of(m, 0);
    auto zf = [](const Vec2& x) { return 0.2 + 0.1 * x.x() - 0.05 * x.y() * x.y() + 0.03 * x.x() * x.y(); };
    std::array<double, 7> z, z2, p;
    for (int j = 0; j < 7; ++j) {
      const Vec2 x = j < 6 ? m.dof_position(m.element(0).dofs[j]) : m.centroid(0);
      z[j] = zf(x);
      z2[j] = z[j] * z[j];
      const double h = w - z[j];
      p[j] = h * h * theta;
    }
    for (int j = 0; j < 6; ++j) {
      const double h = w - z[j];
      const Vec4 v(h * h * theta, 0, 0, theta);
      const Vec4 s = split_source_pmt(v, z[j], fd_gradient(st, z, j), fd_gradient(st, z2, j), g);
      const Vec2 dp = 0.5 * g * fd_gradient(st, p, j);
      EXPECT_LT((dp - s.segment<2>(1)).norm(), 1e-12) << "node " << j;
    }
  }
}

TEST(KDecompose, RestStateSpectra) {
  for (VariableSet set : {VariableSet::Pmt, VariableSet::Prim}) {
    const KDecomposition k = k_decompose(Vec4(1, 0, 0, 1), Vec2(1, 0), 1.0, set);
    const auto lp = sorted_real_eigenvalues(k.plus);
    const auto lm = sorted_real_eigenvalues(k.minus);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(lp[i], 0.0, 1e-12);
    EXPECT_NEAR(lp[3], 1.0, 1e-12);
    EXPECT_NEAR(lm[0], -1.0, 1e-12);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(lm[i], 0.0, 1e-12);
  }
}

TEST(KDecompose, Identities) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> len(0.1, 3.0);
  for (VariableSet set : {VariableSet::Pmt, VariableSet::Prim}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Vec4 v = to_vars(set, test::random_state(rng));
      const Vec2 n = len(rng) * test::random_unit(rng);
      const KDecomposition k = k_decompose(v, n, 9.812, set);
      const double scale = k.k.norm();
      EXPECT_LT((k.plus + k.minus - k.k).norm(), 1e-12 * scale);
      EXPECT_LT((k.plus * k.k - k.k * k.plus).norm(), 1e-10 * scale * scale);
      EXPECT_LT((k.minus * k.k - k.k * k.minus).norm(), 1e-10 * scale * scale);
      EXPECT_LT((k.plus * k.minus).norm(), 1e-10 * scale * scale);
      const auto lp = sorted_real_eigenvalues(k.plus);
      const auto lm = sorted_real_eigenvalues(k.minus);
      EXPECT_GE(lp[0], -1e-10 * scale);
      EXPECT_LE(lm[3], 1e-10 * scale);
      // K+ annihilates eigenvectors of negative eigenvalues.
      Eigen::EigenSolver<Mat> es(k.k);
      for (int i = 0; i < 4; ++i) {
        if (es.eigenvalues()[i].real() < -1e-8 * scale) {
          const Eigen::Vector4cd r = es.eigenvectors().col(i);
          EXPECT_LT((k.plus.cast<std::complex<double>>() * r).norm(), 1e-10 * scale);
        }
      }
    }
  }
}

TEST(KDecompose, SupersonicStateIsOneSided) {
  // u = 3 > c = 1 along n.
  const Vec4 v = to_pmt(Vec4(1, 3, 0, 1));
  const KDecomposition k = k_decompose(v, Vec2(1, 0), 1.0, VariableSet::Pmt);
  EXPECT_LT(k.minus.norm(), 1e-12 * k.k.norm());
  EXPECT_LT((k.plus - k.k).norm(), 1e-12 * k.k.norm());
}

TEST(KDecompose, ClosedFormMatchesEigensolver) {
  std::mt19937 rng(9);
  for (VariableSet set : {VariableSet::Pmt, VariableSet::Prim}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Vec4 v = to_vars(set, test::random_state(rng));
      const Vec2 n = test::random_unit(rng);
      const Jacobians j = jacobians(set, v, 9.812);
      const Mat k = j.a * n.x() + j.b * n.y();
      Eigen::EigenSolver<Mat> es(k);
      const Eigen::Matrix4cd r = es.eigenvectors();
      Eigen::Vector4cd lp;
      for (int i = 0; i < 4; ++i) lp[i] = std::max(es.eigenvalues()[i].real(), 0.0);
      const Mat oracle = (r * lp.asDiagonal() * r.inverse()).real();
      EXPECT_LT((fast::k_plus(set, v, n, 9.812) - oracle).norm(), 1e-10 * k.norm());
    }
  }
}

TEST(KDecompose, InvalidStates) {
  EXPECT_THROW(k_decompose(Vec4(1, 0, 0, -1), Vec2(1, 0), 1.0, VariableSet::Pmt),
               InvariantDomainError);
  EXPECT_THROW(k_decompose(Vec4(1, 0, 0, 1), Vec2(0, 0), 1.0, VariableSet::Pmt),
               std::invalid_argument);
  EXPECT_FALSE(fast::k_plus(VariableSet::Pmt, Vec4(-1, 0, 0, 1), Vec2(1, 0), 1.0).allFinite());
}

TEST(IncomingProjector, IsTheNegativeSpectralProjector) {
  std::mt19937 rng(10);
  for (VariableSet set : {VariableSet::Pmt, VariableSet::Prim}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Vec4 v = to_vars(set, test::random_state(rng));
      const Vec2 n = test::random_unit(rng);
      const Mat p = fast::incoming_projector(set, v, n, 9.812);
      const KDecomposition k = k_decompose(v, n, 9.812, set);
      const double scale = k.k.norm();
      EXPECT_LT((p * p - p).norm(), 1e-10 * p.norm());
      EXPECT_LT((k.k * p - k.minus).norm(), 1e-10 * scale);
    }
  }
}

TEST(IncomingProjector, RestAndSupersonicStates) {
  const Mat rest = fast::incoming_projector(VariableSet::Pmt, Vec4(1, 0, 0, 1), Vec2(0, 1), 1.0);
  EXPECT_NEAR(rest.trace(), 1.0, 1e-14);
  const Vec4 out = to_pmt(Vec4(1, 3, 0, 1));
  EXPECT_EQ(fast::incoming_projector(VariableSet::Pmt, out, Vec2(1, 0), 1.0), Mat::Zero());
  const Mat in = fast::incoming_projector(VariableSet::Pmt, out, Vec2(-1, 0), 1.0);
  EXPECT_LT((in - Mat::Identity()).norm(), 1e-13);
}

TEST(MaxWaveSpeed, Examples) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    EXPECT_NEAR(max_wave_speed(Vec4(1, 0, 0, 1), test::random_unit(rng), 1.0), 1.0, 1e-15);
  }
  EXPECT_NEAR(max_wave_speed(Vec4(1, 2, 0, 1), Vec2(1, 0), 1.0), 3.0, 1e-15);
  const Vec4 u(1.3, 0.4, -0.9, 1.7);
  const Vec2 n = test::random_unit(rng);
  EXPECT_EQ(max_wave_speed(u, n, 9.812), max_wave_speed(u, -n, 9.812));
  EXPECT_THROW(max_wave_speed(Vec4(0, 0, 0, 1), Vec2(1, 0), 1.0), InvariantDomainError);
}

TEST(MaxWaveSpeed, MatchesSpectralRadius) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec4 u = test::random_state(rng);
    const Vec2 n = test::random_unit(rng);
    const Jacobians j = jacobians_pmt(to_pmt(u), 9.812);
    const auto l = sorted_real_eigenvalues(j.a * n.x() + j.b * n.y());
    EXPECT_NEAR(max_wave_speed(u, n, 9.812), std::max(-l[0], l[3]), 1e-10);
  }
}

}  // namespace
}  // namespace pampa
