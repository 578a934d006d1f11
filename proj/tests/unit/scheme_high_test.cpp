#include "pampa/scheme_high.hpp"

#include "pampa/cases.hpp"

#include "support.hpp"

namespace pampa {
namespace {

// Sum of a few Gaussian bumps with random centres, widths and heights.
std::function<double(const Vec2&)> random_bottom(std::mt19937& rng, double amplitude) {
  std::uniform_real_distribution<double> pos(0.1, 0.9), width(20.0, 60.0), height(0.2, 1.0);
  std::vector<std::array<double, 4>> bumps;
  for (int i = 0; i < 3; ++i) bumps.push_back({pos(rng), pos(rng), width(rng), height(rng)});
  return [bumps, amplitude](const Vec2& x) {
    double z = 0.0;
    for (const auto& b : bumps) {
      z += b[3] * std::exp(-b[2] * ((x.x() - b[0]) * (x.x() - b[0]) + (x.y() - b[1]) * (x.y() - b[1])));
    }
    return amplitude * z;
  };
}

Scenario custom(std::function<double(const Vec2&)> bottom, std::function<Vec4(const Vec2&)> init,
                double g, AverageInit average = AverageInit::Quadrature) {
  Scenario s;
  s.name = "unit";
  s.domain = {0, 1, 0, 1};
  s.g = g;
  s.t_final = 1.0;
  s.bathymetry = std::move(bottom);
  s.initial = std::move(init);
  s.average_init = average;
  return s;
}

double max_abs(const Rhs& r) {
  return std::max(test::max_abs(r.points), test::max_abs(r.averages));
}

TEST(Prop22, LakeAtRestResidualVanishes) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> wd(1.5, 3.0), th(0.5, 2.0);
  for (int trial = 0; trial < 8; ++trial) {
    const double g = trial % 2 == 0 ? 9.812 : 1.0;
    auto z = random_bottom(rng, 0.8);
    const double w = wd(rng), theta = th(rng);
    const Problem p(custom(z, [=](const Vec2& x) { return Vec4(w - z(x), 0, 0, (w - z(x)) * theta); }, g),
                    test::jittered_square(10 + trial, 0.3, 100 + trial));
    double zmax = 0.0;
    for (double v : p.discretization().z().points) zmax = std::max(zmax, std::abs(v));
    const Rhs r = assemble_rhs(p.discretization(), p.initial(), 0.0);
    EXPECT_LE(max_abs(r), 1e-11 * g * zmax) << "trial " << trial;
  }
}

TEST(Prop22, IsobaricResidualVanishes) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pd(0.5, 4.0), a(-1.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const double p0 = pd(rng), ax = a(rng), ay = a(rng);
    auto state = [=](const Vec2& x) {
      const double theta = std::exp(0.5 * ax * std::sin(3 * x.x()) + 0.5 * ay * x.y() * x.y());
      const double h = std::sqrt(p0 / theta);
      return Vec4(h, 0, 0, h * theta);
    };
    const Problem p(custom([](const Vec2&) { return 0.0; }, state, 1.0, AverageInit::Centroid),
                    test::jittered_square(9 + trial, 0.3, 200 + trial));
    for (EdgeRuleKind k : p.discretization().edge_rules()) EXPECT_EQ(k, EdgeRuleKind::Lobatto3);
    const Rhs r = assemble_rhs(p.discretization(), p.initial(), 0.0);
    EXPECT_LE(max_abs(r), 1e-11 * std::max(1.0, p0)) << "trial " << trial;
  }
}

TEST(CellAverageRhs, ConstantStateFlatBottom) {
  const Problem p(custom([](const Vec2&) { return 0.0; },
                         [](const Vec2&) { return Vec4(1.3, 0.4, -0.2, 1.9); }, 9.812),
                  test::jittered_square(6, 0.3, 3));
  const Rhs r = assemble_rhs(p.discretization(), p.initial(), 0.0);
  // Constant flux around a closed polygon.
  EXPECT_LE(test::max_abs(r.averages), 1e-13);
}

TEST(AssembleRhs, RestStateFlatBottomIsZero) {
  const Problem p(custom([](const Vec2&) { return 0.0; },
                         [](const Vec2&) { return Vec4(2.0, 0, 0, 2.0); }, 1.0),
                  test::jittered_square(6, 0.3, 4));
  const Rhs r = assemble_rhs(p.discretization(), p.initial(), 0.0);
  EXPECT_LE(max_abs(r), 1e-11);
}

TEST(PointValueRhs, ConsistencyWithLinearData) {
  // Linear pmt variables on a flat bottom: D is exact, so every interior
  // DoF receives -J(v) grad v.
  const Vec4 v0(2.0, 0.3, -0.1, 1.2), gx(0.2, 0.05, 0.02, -0.1), gy(-0.1, 0.03, 0.04, 0.05);
  auto v = [=](const Vec2& x) { return Vec4(v0 + gx * x.x() + gy * x.y()); };
  const Problem p(custom([](const Vec2&) { return 0.0; }, [=](const Vec2& x) { return from_pmt(v(x)); },
                         9.812, AverageInit::Centroid),
                  test::jittered_square(6, 0.3, 5));
  const Rhs r = assemble_rhs(p.discretization(), p.initial(), 0.0);
  const Mesh& m = p.mesh();
  for (int s = 0; s < m.dof_count(); ++s) {
    if (m.is_boundary_dof(s)) continue;
    const Vec4 expected = -fast::apply_jacobian(VariableSet::Pmt, p.initial().points[s], gx, gy, 9.812);
    EXPECT_LT((r.points[s] - expected).norm(), 1e-10 * (1 + expected.norm())) << s;
  }
}

TEST(AssembleRhs, CompactPerturbationConservesMassAndHeat) {
  auto bump = [](const Vec2& x) {
    const double r2 = ((x.x() - 0.5) * (x.x() - 0.5) + (x.y() - 0.5) * (x.y() - 0.5)) / 0.09;
    return r2 < 1.0 ? std::pow(1.0 - r2, 4) : 0.0;
  };
  const Problem p(custom([&](const Vec2& x) { return 0.3 * bump(x); },
                         [&](const Vec2& x) {
                           const double h = 1.0 + 0.2 * bump(x);
                           return Vec4(h, 0.3 * bump(x), -0.2 * bump(x), h * (1.0 + 0.5 * bump(x)));
                         },
                         9.812),
                  test::jittered_square(12, 0.3, 6));
  const Rhs r = assemble_rhs(p.discretization(), p.initial(), 0.0);
  double mass = 0.0, heat = 0.0;
  for (int e = 0; e < p.mesh().element_count(); ++e) {
    mass += p.mesh().element(e).area * r.averages[e][0];
    heat += p.mesh().element(e).area * r.averages[e][3];
  }
  EXPECT_LE(std::abs(mass), 1e-12);
  EXPECT_LE(std::abs(heat), 1e-12);
}

TEST(AssembleRhs, LobattoOnlyBreaksLakeAtRest) {
  const Scenario s = builtin_scenario("ex3_three_humps");
  const Mesh m = rectangle_mesh(s.domain, 16, 16, 0.2);
  const Problem wb(s, m);
  const Problem plain(s, m, SchemeOptions{WbMode::LobattoOnly});
  EXPECT_LE(max_abs(assemble_rhs(wb.discretization(), wb.initial(), 0.0)), 1e-11);
  EXPECT_GT(test::max_abs(assemble_rhs(plain.discretization(), plain.initial(), 0.0).averages), 1e-6);
}

TEST(AssembleRhs, SteadyVortexTruncationDecreases) {
  const Scenario s = builtin_scenario("ex1_steady_vortex");
  double previous = 0.0;
  for (int n : {16, 32, 64}) {
    const Problem p(s, rectangle_mesh(s.domain, n, n, 0.2, 9));
    const Rhs r = assemble_rhs(p.discretization(), p.initial(), 0.0);
    double l1 = 0.0, area = 0.0;
    for (int e = 0; e < p.mesh().element_count(); ++e) {
      l1 += p.mesh().element(e).area * r.averages[e].cwiseAbs().sum();
      area += p.mesh().element(e).area;
    }
    l1 /= area;
    if (previous > 0.0) {
      EXPECT_GT(std::log2(previous / l1), 2.0) << "n = " << n;
    }
    previous = l1;
  }
}

TEST(AssembleRhs, DirichletBoundaryDofsAreImposed) {
  const Scenario s = builtin_scenario("ex1_steady_vortex");
  const Problem p(s, rectangle_mesh(s.domain, 8, 8));
  ASSERT_EQ(p.discretization().boundary().kind, BoundaryKind::Dirichlet);
  const Rhs r = assemble_rhs(p.discretization(), p.initial(), 0.0);
  for (int d = 0; d < p.mesh().dof_count(); ++d) {
    if (p.mesh().is_boundary_dof(d)) {
      EXPECT_EQ(r.points[d], Vec4::Zero());
    }
  }
}

TEST(Discretization, BoundaryNormalsPointOutward) {
  const Mesh m = test::jittered_square(5, 0.3, 8);
  const Discretization disc(m, project_function([](const Vec2&) { return 0.0; }, m), Params{1.0}, {});
  for (int d = 0; d < m.dof_count(); ++d) {
    const Vec2& n = disc.boundary_normal(d);
    if (!m.is_boundary_dof(d)) {
      EXPECT_EQ(n, Vec2::Zero());
      continue;
    }
    EXPECT_GT(n.dot(m.dof_position(d) - Vec2(0.5, 0.5)), 0.0) << d;
  }
}

TEST(UpwindSolve, ScaleInvariance) {
  std::mt19937 rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    Mat4 k = Mat4::Zero();
    for (int i = 0; i < 3; ++i) {
      const Vec4 v = to_pmt(test::random_state(rng));
      k += fast::k_plus(VariableSet::Pmt, v, test::random_unit(rng), 9.812);
    }
    const Vec4 b = Vec4::Random();
    const Vec4 x = upwind_solve(k, b);
    EXPECT_LT((upwind_solve(3.7 * k, 3.7 * b) - x).norm(), 1e-11 * (1 + x.norm()));
  }
}

TEST(UpwindSolve, PseudoInverseOnSingularSum) {
  // At rest a single K+ has rank one: only the range component is solved.
  const Mat4 k = fast::k_plus(VariableSet::Pmt, Vec4(1, 0, 0, 1), Vec2(1, 0), 1.0);
  const Vec4 b = k * Vec4(0.3, -0.2, 0.5, 0.1);
  const Vec4 x = upwind_solve(k, b);
  EXPECT_TRUE(x.allFinite());
  EXPECT_LT((k * x - b).norm(), 1e-12);
  EXPECT_FALSE(upwind_solve(Mat4::Constant(NAN), b).allFinite());
}

}  // namespace
}  // namespace pampa
