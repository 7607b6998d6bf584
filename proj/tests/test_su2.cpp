#include "liesurf/scenarios.hpp"
#include "liesurf/su2.hpp"

#include "test_util.hpp"

#include <numbers>

using namespace liesurf;

namespace {

::testing::AssertionResult same(const Quat& a, const Quat& b, double tol) {
  const double d = (a.r4() - b.r4()).norm();
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "distance " << d;
}

FrameCoefficients gzbar_frame(double h) {
  const GridDomain d = scenarios::gzbar_domain(h);
  return coeffs_s3(scenarios::gzbar(d), RealField(d, 1.0));
}

}  // namespace

TEST(Quat, Basis) {
  const auto E = su2_basis();
  const Mat2c id = Mat2c::Identity();
  EXPECT_LT((E[1] * E[2] - E[2] * E[1] - 2.0 * E[0]).norm(), 1e-15);
  EXPECT_LT((E[0] * E[0] + id).norm(), 1e-15);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double ip = 0.5 * (E[i].adjoint() * E[j]).trace().real();
      EXPECT_NEAR(ip, i == j ? 1 : 0, 1e-15);
    }
}

TEST(Quat, ProductMatchesMatrices) {
  auto r = test::rng(31);
  std::normal_distribution<double> n(0, 1);
  for (int k = 0; k < 50; ++k) {
    const Quat a = Quat::from_r4(Vec4(n(r), n(r), n(r), n(r))), b = Quat::from_r4(Vec4(n(r), n(r), n(r), n(r)));
    EXPECT_LT(((a * b).matrix() - a.matrix() * b.matrix()).norm(), 1e-13);
    const Quat u = a.normalized();
    EXPECT_TRUE(same(u * u.inverse(), Quat::identity(), 1e-14));
  }
  const Quat q = Quat::from_components(0.1, 0.2, 0.3, 0.4);
  EXPECT_EQ(q.components(), (std::array<double, 4>{0.1, 0.2, 0.3, 0.4}));
}

TEST(Exp, Examples) {
  EXPECT_TRUE(same(exp_su2(Vec3(0, 0, std::numbers::pi / 2)), {I, 0}, 1e-15));
  const double t = 0.7;
  Mat2c expected;
  expected << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
  EXPECT_LT((exp_su2(Vec3(t, 0, 0)).matrix() - expected).norm(), 1e-15);
  auto r = test::rng(32);
  std::normal_distribution<double> n(0, 3);
  for (int k = 0; k < 100; ++k) EXPECT_NEAR(exp_su2(Vec3(n(r), n(r), n(r))).norm(), 1, 1e-14);
  EXPECT_TRUE(same(exp_su2(Vec3(1e-10, 0, 0)), {1, 1e-10}, 1e-20));
}

TEST(Exp, GeodesicDistance) {
  EXPECT_NEAR(geodesic_distance(Quat::identity(), exp_su2(Vec3(0.3, 0, 0))), 0.3, 1e-14);
  EXPECT_NEAR(geodesic_distance(Quat::identity(), exp_su2(Vec3(0, 0, 3))), 3, 1e-14);
}

TEST(Integrate, ZeroFrameIsConstant) {
  const GridDomain d = scenarios::gzbar_domain(0.1);
  const TangentField t{d, std::vector<Vec3>(d.size(), Vec3::Zero()), std::vector<Vec3>(d.size(), Vec3::Zero())};
  const Quat start = exp_su2(Vec3(0.2, -0.4, 1));
  const SurfaceSample s = integrate_frame(t, start);
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_TRUE(same(s.quat(k), start, 1e-15));
  EXPECT_EQ(max_loop_closure_defect(t, Target::S3), 0.0);
}

TEST(Integrate, UnitNormAndLeftTranslation) {
  const TangentField t = tangents(gzbar_frame(0.02));
  const Quat q0 = exp_su2(Vec3(0.3, 0.1, -0.7));
  const SurfaceSample a = integrate_frame(t, Quat::identity()), b = integrate_frame(t, q0);
  EXPECT_LT(a.max_raw_drift, 1e-8);
  for (const Vec4& p : a.points) EXPECT_NEAR(p.norm(), 1, 1e-14);
  EXPECT_LT(left_translation_deviation(a, b), 1e-13);
  for (std::size_t k = 0; k < a.points.size(); k += 97) EXPECT_TRUE(same(q0 * a.quat(k), b.quat(k), 1e-13));
}

TEST(Integrate, OracleReproducesForms) {
  std::vector<double> dF, dK;
  for (double h : {0.04, 0.02}) {
    const GridDomain d = scenarios::gzbar_domain(h);
    const ComplexField g = scenarios::gzbar(d);
    const RealField K(d, 1.0);
    const FrameCoefficients f = coeffs_s3(g, K);
    const Field<FundamentalForms> forms = forms_s3(g, K);
    const OracleResult o = embed_oracle_forms(integrate_frame(tangents(f), Quat::identity()));
    double mf = 0;
    for (std::size_t k = 0; k < d.size(); ++k)
      if (o.valid[k]) {
        // Real coordinates: E_x = 2F + 2Re E, G_y = 2F - 2Re E, with phi_x = phi_z + phi_zbar.
        mf = std::max(mf, std::abs(o.forms[k].E + o.forms[k].G - 4 * forms[k].F));
        EXPECT_NEAR(o.forms[k].F, -2 * forms[k].E.imag(), 0.1);
      }
    dF.push_back(mf);
    dK.push_back(o.max_deviation([](std::size_t) { return 1.0; }));
  }
  EXPECT_GT(dF[0] / dF[1], 3.5);
  EXPECT_GT(dK[0] / dK[1], 3.5);
  EXPECT_LT(dK[1], 2e-3);
}

TEST(LoopClosure, IntegrableConvergence) {
  std::vector<double> v;
  for (double h : {0.04, 0.02, 0.01}) v.push_back(max_loop_closure_defect(tangents(gzbar_frame(h)), Target::S3));
  EXPECT_GT(v[0] / v[1], 4);
  EXPECT_GT(v[1] / v[2], 4);
}

TEST(LoopClosure, NonIntegrableScalesAsH2) {
  std::vector<double> ratio;
  for (double h : {0.04, 0.02, 0.01}) {
    const GridDomain d = scenarios::gzbar_domain(h);
    const RealField K = sample(d, [](double x, double) { return 1 + 0.3 * x; });
    const double defect = max_loop_closure_defect(tangents(coeffs_s3(scenarios::gzbar(d), K)), Target::S3, 1);
    ratio.push_back(defect / (h * h));
  }
  EXPECT_GT(ratio[2], 1e-3);
  EXPECT_NEAR(ratio[2] / ratio[1], 1, 0.1);
}

TEST(LoopClosure, ExactFormInR3) {
  const GridDomain d = GridDomain::covering(0, 1, 0, 1, 0.05, GridKind::Parametric);
  TangentField t{d, std::vector<Vec3>(d.size()), std::vector<Vec3>(d.size())};
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 0; j < d.n2; ++j) {
      const double x = d.x(i), y = d.y(j);
      t.w1[d.index(i, j)] = Vec3(1, 2 * x, y);  // gradient of (x, x^2, x y)
      t.w2[d.index(i, j)] = Vec3(0, 0, x);
    }
  EXPECT_LT(max_loop_closure_defect(t, Target::R3), 1e-15);
}

TEST(Oracle, Spheres) {
  const OracleResult great = embed_oracle_forms(scenarios::great_sphere(0.02));
  EXPECT_LT(great.max_deviation([](std::size_t) { return 0.0; }), 1e-10);
  std::vector<double> dev;
  for (double h : {0.04, 0.02}) {
    const OracleResult o = embed_oracle_forms(scenarios::distance_sphere(std::numbers::pi / 4, h));
    dev.push_back(o.max_deviation([](std::size_t) { return 1.0; }));
  }
  EXPECT_LT(dev[1], 1e-3);
  EXPECT_GT(dev[0] / dev[1], 3.5);
  const OracleResult o4 = embed_oracle_forms(scenarios::distance_sphere(0.5, 0.02), 4, 2);
  EXPECT_LT(o4.max_deviation([](std::size_t) { return std::pow(std::cos(0.5) / std::sin(0.5), 2); }), 1e-6);
}

TEST(Oracle, DegenerateTangents) {
  const GridDomain d = GridDomain::covering(0, 1, 0, 1, 0.1, GridKind::Parametric);
  SurfaceSample s{d, true, std::vector<Vec4>(d.size()), 0};
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 0; j < d.n2; ++j) s.points[d.index(i, j)] = exp_su2(Vec3(d.x(i) + d.y(j), 0, 0)).r4();
  EXPECT_THROW(embed_oracle_forms(s), DegenerateTangents);
}

TEST(Stereo4, Examples) {
  const GridDomain d = GridDomain::covering(0, 1, 0, 1, 0.25, GridKind::Parametric);
  SurfaceSample s{d, true, std::vector<Vec4>(d.size(), Vec4(1, 0, 0, 0)), 0};
  s.points[1] = Vec4(0, 0, 0, -1);
  s.points[2] = Vec4(0, 0, 0, 1);
  const R3Mesh m = stereo_s3_to_r3(s);
  EXPECT_EQ(m.vertices[0], Vec3(1, 0, 0));
  EXPECT_EQ(m.vertices[1], Vec3(0, 0, 0));
  EXPECT_TRUE(m.pole_flag[2]);
  EXPECT_EQ(m.quads.size(), 16u - 2u);
}

TEST(R3Integrate, PseudosphereUpToRigidMotion) {
  std::vector<double> dev;
  for (double h : {0.04, 0.02}) {
    const GridDomain d = scenarios::pseudosphere_domain(h);
    const auto sc = scenarios::scenario_pseudosphere(d);
    const NullFrameCoefficients f = coeffs_negative_closed({0, 0, 0}, sc.data(sc.K_star));
    const SurfaceSample s = r3_integrate(tangents(f), Vec3::Zero());
    std::vector<Vec3> a(d.size()), b(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
      a[k] = s.r3(k);
      b[k] = sc.psi.r3(k);
    }
    dev.push_back(rigid_deviation(a, b, true));
  }
  EXPECT_LT(dev[1], 1e-3);
  EXPECT_GT(dev[0] / dev[1], 3.5);
}

TEST(R3Integrate, GzbarHasUnitCurvature) {
  const GridDomain d = scenarios::gzbar_domain(0.02);
  const ComplexField g = scenarios::gzbar(d);
  const RealField K(d, 1.0);
  const SurfaceSample s = r3_integrate(tangents(coeffs_unimodular_closed({0, 0, 0}, g, K)), Vec3::Zero());
  EXPECT_LT(embed_oracle_forms(s).max_deviation([](std::size_t) { return 1.0; }), 1e-3);
}

TEST(R3Integrate, ConstantNormal) {
  const GridDomain d = scenarios::gzbar_domain(0.1);
  const ComplexField g(d, cplx(0.3, 0.2));
  const SurfaceSample s = r3_integrate(tangents(coeffs_unimodular_closed({0, 0, 0}, g, RealField(d, 1.0))), Vec3(1, 2, 3));
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_EQ(s.r3(k), Vec3(1, 2, 3));
}

TEST(Rigid, RecoversMotion) {
  auto r = test::rng(33);
  std::normal_distribution<double> n(0, 1);
  std::vector<Vec3> a(40), b(40), c(40);
  const Mat3 R = Eigen::AngleAxisd(0.8, Vec3(1, 2, -1).normalized()).toRotationMatrix();
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] = Vec3(n(r), n(r), n(r));
    b[k] = R * a[k] + Vec3(3, -1, 2);
    c[k] = -b[k];
  }
  EXPECT_LT(rigid_deviation(a, b, false), 1e-12);
  EXPECT_LT(rigid_deviation(a, c, true), 1e-12);
  EXPECT_GT(rigid_deviation(a, c, false), 1e-2);
}

// Reference profile from an independent high-order adaptive solve.
TEST(Revolution, FrozenProfile) {
  const RevolutionResult r = revolution_ode(-2, 0.1, 2.0, 1e-3, 0.1);
  const std::pair<double, Quat> ref[] = {
      {0.5, {{0.87308240516636426, -0.075439711281210103}, {0.14063161698841445, 0.46071543500728684}}},
      {1.0, {{0.49227579362745333, -0.38914857829241462}, {0.27663135624803509, 0.72780699348229549}}},
      {2.0, {{-0.578531298780808, -0.61042985719806331}, {-0.23027417326414032, 0.48954134748732575}}}};
  for (const auto& [s, q] : ref) EXPECT_TRUE(same(profile_at(r, s), q, 1e-10)) << "s = " << s;
  EXPECT_TRUE(same(profile_at(r, 0.5005), revolution_point(r, 0.5005, 0), 1e-15));
}

TEST(Revolution, CurvatureAndDrift) {
  const RevolutionResult r = revolution_ode(-2, 0.1, 2.0, 1e-3, 0.3);
  EXPECT_LT(r.profile.max_raw_drift, 1e-8);
  const OracleResult o = embed_oracle_forms(r.surface, 4, 3);
  EXPECT_LT(o.max_deviation([](std::size_t) { return -2.0; }), 1e-4);
  EXPECT_THROW(revolution_ode(-1, 0.1, 2, 1e-3), DomainError);
  EXPECT_THROW(revolution_ode(-2, 0.1, 2, 0.5), Error);
}

TEST(Revolution, ThirdComponentIndependentOfT) {
  for (double s : {0.3, 1.1})
    for (double t : {-0.4, 0.0, 0.9}) {
      const NullPair p = scenarios::pseudosphere_k2_frame(t - s, t + s);
      const NullPair q = scenarios::pseudosphere_k2_frame(-s, s);
      EXPECT_NEAR((p.A - p.a)[2].real(), (q.A - q.a)[2].real(), 1e-14);
    }
}

TEST(Revolution, MatchesFrameIntegration) {
  // The K = -2 null frame integrated on the (s, t) grid agrees with the
  // revolution solution up to a left translation.
  std::vector<double> dev;
  for (double h : {0.02, 0.01}) {
    const GridDomain d = GridDomain::covering(0.2, 1.0, 0.0, 0.4, h, GridKind::Parametric);
    TangentField t{d, std::vector<Vec3>(d.size()), std::vector<Vec3>(d.size())};
    for (std::size_t i = 0; i < d.n1; ++i)
      for (std::size_t j = 0; j < d.n2; ++j) {
        const double s = d.x(i), tt = d.y(j);
        const NullPair p = scenarios::pseudosphere_k2_frame(tt - s, tt + s);
        t.w1[d.index(i, j)] = (p.A - p.a).real();
        t.w2[d.index(i, j)] = (p.A + p.a).real();
      }
    const RevolutionResult r = revolution_ode(-2, 0.2, 1.0, 1e-3, 0.1);
    SurfaceSample ref{d, true, std::vector<Vec4>(d.size()), 0};
    for (std::size_t i = 0; i < d.n1; ++i)
      for (std::size_t j = 0; j < d.n2; ++j) ref.points[d.index(i, j)] = revolution_point(r, d.x(i), d.y(j)).r4();
    const SurfaceSample s = integrate_frame(t, ref.quat(0));
    dev.push_back(left_translation_deviation(s, ref));
  }
  EXPECT_LT(dev[1], 1e-3);
  EXPECT_GT(dev[0] / dev[1], 3.5);
}
