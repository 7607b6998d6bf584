#include "liesurf/frame_positive.hpp"
#include "liesurf/pde_coefficients.hpp"
#include "liesurf/scenarios.hpp"

#include "test_util.hpp"

using namespace liesurf;

namespace {

const Mu kS3{1, 1, 1};
const Mu kBerger = GroupPreset(GroupKind::Berger, 0.4).mu();
const Mu kNil = GroupPreset(GroupKind::Nil3, 1).mu();

/// Random node with positive admissibility margin.
ConformalJet random_jet(std::mt19937_64& r) {
  std::uniform_real_distribution<double> u(-1.5, 1.5), k(0.2, 4.0);
  for (;;) {
    const ConformalJet j{{u(r), u(r)}, {u(r), u(r)}, {u(r), u(r)}, k(r)};
    if (positive_margin(j) > 0.05) return j;
  }
}

ComplexField gzbar(double h) { return scenarios::gzbar(scenarios::gzbar_domain(h)); }

}  // namespace

// Reference values from an independent dense solve of
// (I - s P_N diag(mu)) a = s N x N_z, s = i / sqrt(K).
TEST(SolveE11, FrozenS3) {
  const ConformalJet j{{0.3, 0.2}, {0.1, -0.05}, {0.8, 0.1}, 1.5};
  const E11Solution s = solve_e11_at(christoffel(kS3), j);
  const CVec3 ref({-0.29694100768748005, -0.14301892787175438}, {0.26970984476551602, -0.38788703036836136},
                  {-0.0807823755244617, -0.27697260789700828});
  EXPECT_TRUE(test::close(s.a, ref, 1e-13));
  EXPECT_TRUE(test::close(s.det, {0.33333333333333348, -1.6329931618554523}, 1e-13));
}

TEST(SolveE11, FrozenBerger) {
  const ConformalJet j{{0.3, 0.2}, {0.1, -0.05}, {0.8, 0.1}, 1.5};
  const E11Solution s = solve_e11_at(christoffel(kBerger), j);
  const CVec3 ref({-0.3562075142741094, -0.04218008957136269}, {0.16831210101845645, -0.56998408926544664},
                  {-0.16827548064032533, -0.29115136718275431});
  EXPECT_TRUE(test::close(s.a, ref, 1e-13));
  EXPECT_TRUE(test::close(s.det, {0.84446498029080852, -0.80282542664764567}, 1e-13));
}

TEST(SolveE11, GzbarAtOrigin) {
  const ConformalJet j{0, 0, 1, 1};
  const CVec3 ref(cplx(-0.5, -0.5), cplx(0.5, -0.5), 0);
  EXPECT_TRUE(test::close(solve_e11_at(christoffel(kS3), j).a, ref, 1e-14));
  EXPECT_TRUE(test::close(unimodular_closed_at(kS3, j), ref, 1e-14));
  EXPECT_TRUE(test::close(s3_closed_at(j), ref, 1e-14));
}

TEST(SolveE11, FlatReducesToCross) {
  const ConformalJet j{{0.4, -0.7}, 0, {1.2, 0.3}, 2.0};
  const Vec3 N = stereo_unproject(j.g);
  const CVec3 Nz = gauss_derivative(j.g, j.g_z, j.gbar_z());
  const CVec3 expected = (I / std::sqrt(j.K)) * algebra_cross(CVec3(N.cast<cplx>()), Nz);
  EXPECT_TRUE(test::close(solve_e11_at(christoffel({0, 0, 0}), j).a, expected, 1e-14));
}

TEST(SolveE11, ConstantGaussMap) {
  const ConformalJet j{{0.4, -0.7}, 0, 0, 2.0};
  EXPECT_TRUE(test::close(solve_e11_at(christoffel(kS3), j).a, CVec3::Zero(), 1e-15));
  EXPECT_TRUE(test::close(s3_closed_at(j), CVec3::Zero(), 1e-15));
}

TEST(SolveE11, SubstitutionResidual) {
  auto r = test::rng(11);
  for (const Mu& mu : {kS3, kBerger, kNil, Mu{-1, 1, 0}}) {
    const ConnectionCoefficients cc = christoffel(mu);
    for (int k = 0; k < 20; ++k) {
      const ConformalJet j = random_jet(r);
      const CVec3 a = solve_e11_at(cc, j).a;
      const Vec3 N = stereo_unproject(j.g);
      const CVec3 Nz = gauss_derivative(j.g, j.g_z, j.gbar_z());
      const CVec3 rhs = (I / std::sqrt(j.K)) * algebra_cross(CVec3(N.cast<cplx>()), CVec3(Nz + cc.nabla(a, N.cast<cplx>())));
      EXPECT_LT((a - rhs).norm(), 1e-10 * (1 + rhs.norm()));
    }
  }
}

TEST(ClosedForms, AgreeWithSolver) {
  auto r = test::rng(12);
  for (const Mu& mu : {kS3, kNil, kBerger, GroupPreset(GroupKind::PSL2, 0.7).mu()}) {
    const ConnectionCoefficients cc = christoffel(mu);
    for (int k = 0; k < 50; ++k) {
      const ConformalJet j = random_jet(r);
      const E11Solution s = solve_e11_at(cc, j);
      EXPECT_LT((unimodular_closed_at(mu, j) - s.a).norm(), 1e-10 * std::max(1.0, s.a.norm()));
      EXPECT_LT(std::abs(e11_discriminant(mu, j.g, j.K) - s.det), 1e-12 * std::max(1.0, std::abs(s.det)));
    }
  }
}

TEST(ClosedForms, S3Specialization) {
  auto r = test::rng(13);
  for (int k = 0; k < 100; ++k) {
    const ConformalJet j = random_jet(r);
    EXPECT_LT((s3_closed_at(j) - unimodular_closed_at(kS3, j)).norm(), 1e-12 * std::max(1.0, s3_closed_at(j).norm()));
  }
}

TEST(ClosedForms, RealGaugeMapKillsA3) {
  const ConformalJet j{0.5, 0.3, 0.3, 1.7};
  EXPECT_LT(std::abs(unimodular_closed_at(kBerger, j)[2]), 1e-15);
}

TEST(ClosedForms, RequireMu12) {
  EXPECT_THROW(unimodular_closed_at({-1, 1, 0}, {0.1, 0.2, 0.9, 1}), MuMismatch);
}

TEST(Forms, GzbarAtOrigin) {
  const ConformalJet j{0, 0, 1, 1};
  const FundamentalForms f = forms_s3_at(j);
  EXPECT_TRUE(test::close(f.E, 0, 1e-15));
  EXPECT_NEAR(f.F, 1, 1e-15);
  EXPECT_NEAR(f.D, -1, 1e-15);
  EXPECT_NEAR(f.rho(), 1, 1e-15);
  EXPECT_NEAR(f.II_coeff, 2, 1e-15);
  EXPECT_NEAR(f.K_recovered(), 1, 1e-15);
  const FundamentalForms m = forms_mu12_at(kS3, j);
  EXPECT_NEAR(m.F, 1, 1e-15);
  EXPECT_TRUE(test::close(m.E, 0, 1e-15));
}

TEST(Forms, MatchFrame) {
  auto r = test::rng(14);
  for (const Mu& mu : {kS3, kNil, kBerger}) {
    for (int k = 0; k < 30; ++k) {
      const ConformalJet j = random_jet(r);
      const CVec3 a = unimodular_closed_at(mu, j);
      const FundamentalForms f = forms_mu12_at(mu, j);
      const FundamentalForms g = forms_from_frame(a, j.K);
      EXPECT_NEAR(f.F, a.squaredNorm(), 1e-8 * std::max(1.0, f.F));
      EXPECT_LT(std::abs(f.E - (a.array() * a.array()).sum()), 1e-8 * std::max(1.0, f.F));
      EXPECT_NEAR(f.D, g.D, 1e-8 * std::max(1.0, std::abs(g.D)));
      EXPECT_LT(f.D, 0);
      EXPECT_GT(f.II_coeff, 0);
      EXPECT_NEAR(f.K_recovered(), j.K, 1e-8 * j.K);
    }
  }
}

TEST(Forms, S3MatchesMu12) {
  auto r = test::rng(15);
  for (int k = 0; k < 30; ++k) {
    const ConformalJet j = random_jet(r);
    const FundamentalForms a = forms_s3_at(j), b = forms_mu12_at(kS3, j);
    EXPECT_NEAR(a.F, b.F, 1e-10 * std::max(1.0, a.F));
    EXPECT_NEAR(a.D, b.D, 1e-10 * std::max(1.0, std::abs(a.D)));
    // The printed II of the S3 corollary is rho, half the II coefficient.
    EXPECT_NEAR(s3_printed_ii(j), a.II_coeff / 2, 1e-10 * std::max(1.0, a.II_coeff));
  }
}

TEST(Admissible, Margins) {
  const GridDomain d = scenarios::gzbar_domain(0.1);
  const auto check = [&](const std::function<cplx(double, double)>& f, double expected) {
    const RealField m = admissible_positive(sample(d, f));
    for (std::size_t k = 0; k < d.size(); ++k) EXPECT_NEAR(m[k], expected, 1e-12);
  };
  check([](double x, double y) { return cplx(x, -y); }, 1);
  check([](double x, double y) { return cplx(x, y); }, -1);
  check([](double x, double y) { return cplx(x, -y) + 0.5 * cplx(x, y); }, 0.75);
}

// Reference coefficients from a least-squares fit of the true frame
// commutator at (x, g, mu1, mu3) = (1.3, 0.4-0.3i, 0.6, 1.7).
TEST(GTable, FrozenCommutatorFit) {
  const cplx ref[8] = {{0.91880304333321838, 0.68910228277994157},     {-0.25163009800078673, -0.11213510433727143},
                       {0.037193273195782084, 0.27296272311793879},    {0.028321136789651286, 0.075308476374489994},
                       {0.041616496189703554, -0.17454598783262223},   {0.034238441465451311, -0.060097778186662919},
                       {0.041616496764804396, 0.17454598744964731},    {0.0034387109731904512, -0.06908103238689875}};
  const GTable G = pde_coefficients(1.3, std::sqrt(1.3), {0.4, -0.3}, 0.6, 1.7);
  for (int i = 0; i < 8; ++i) EXPECT_TRUE(test::close(G[i], ref[i], 1e-8)) << "G" << i + 1;
}

TEST(GTable, PrintedG1AndG8Differ) {
  const GTable G = pde_coefficients(1.3, std::sqrt(1.3), {0.4, -0.3}, 0.6, 1.7);
  const GTable L = pde_coefficients_literal(1.3, std::sqrt(1.3), {0.4, -0.3}, 0.6, 1.7);
  EXPECT_GT(std::abs(G[0] - L[0]), 1e-3);
  EXPECT_GT(std::abs(G[7] - L[7]), 1e-3);
  for (int i = 1; i < 7; ++i) EXPECT_TRUE(test::close(G[i], L[i], 1e-14)) << "G" << i + 1;
}

TEST(GTable, Symmetries) {
  auto r = test::rng(16);
  std::uniform_real_distribution<double> u(-1.5, 1.5), k(0.2, 4.0);
  for (int n = 0; n < 100; ++n) {
    const double x = k(r), m1 = u(r), m3 = u(r);
    const cplx g(u(r), u(r));
    const GTable G = pde_coefficients(x, std::sqrt(x), g, m1, m3);
    EXPECT_LT(std::abs(G[4] - std::conj(G[6])), 1e-12 * std::max(1.0, std::abs(G[4])));
    const GTable S = pde_coefficients(x, std::sqrt(x), g, m1, m1);
    for (int i : {1, 2, 3, 5, 7}) EXPECT_EQ(std::abs(S[i]), 0.0) << "G" << i + 1;
  }
}

TEST(Integrability, GzbarConvergesAndPerturbationPersists) {
  std::vector<double> log_grad, g_eq, pert_log, pert_g;
  for (double h : {0.02, 0.01}) {
    const GridDomain d = scenarios::gzbar_domain(h);
    const ComplexField g = scenarios::gzbar(d);
    log_grad.push_back(integrability_residual_s3(g, RealField(d, 1.0)).log_gradient.summary.max);
    g_eq.push_back(pde_residual_t1(kS3, g, RealField(d, 1.0)).summary.max);
    const RealField K = sample(d, [](double x, double) { return 1 + 0.3 * x; });
    pert_log.push_back(integrability_residual_s3(g, K).log_gradient.summary.max);
    pert_g.push_back(pde_residual_t1(kS3, g, K).summary.max);
  }
  EXPECT_LT(log_grad.back(), 1e-10);
  EXPECT_LT(g_eq.back(), 1e-10);
  EXPECT_GT(pert_log.back(), 1e-2);
  EXPECT_GT(pert_g.back(), 1e-2);
  EXPECT_GT(pert_log.back(), 0.5 * pert_log.front());
  EXPECT_GT(pert_g.back(), 0.5 * pert_g.front());
}

TEST(Integrability, LogIdentity) {
  const GridDomain d = scenarios::gzbar_domain(1e-2);
  const RealField K = sample(d, [](double x, double y) { return 2 + std::cos(x) * std::sin(y); });
  EXPECT_LT(integrability_residual_s3(scenarios::gzbar(d), K).identity.summary.max, 1e-6);
}

TEST(Integrability, ConstantKEqualsRhs) {
  // For constant K the residual is the harmonic defect term alone.
  const GridDomain d = scenarios::gzbar_domain(0.02);
  const ComplexField g = sample(d, [](double x, double y) { return cplx(x, -y) + 0.2 * cplx(x * x - y * y, 2 * x * y); });
  const double log_grad = integrability_residual_s3(g, RealField(d, 1.0)).log_gradient.summary.max;
  EXPECT_GT(log_grad, 1e-3);
}

TEST(Harmonic, Examples) {
  EXPECT_LT(harmonic_residual(gzbar(0.02)).summary.max, 1e-10);
  const GridDomain d = scenarios::gzbar_domain(0.02);
  const ComplexField bent = sample(d, [](double x, double y) { return cplx(x, -y) / (1 + 0.5 * (x * x + y * y)); });
  EXPECT_GT(harmonic_residual(bent).summary.max, 1e-3);
  const ComplexField anti = sample(d, [](double x, double y) { return std::exp(cplx(x, -y)); });
  EXPECT_LT(harmonic_residual(anti).summary.max, 1e-2 * 0.02 * 0.02 * 100);
}

TEST(Commutator, S3Order2AndPerturbation) {
  const ConnectionCoefficients cc = christoffel(kS3);
  std::vector<double> base, pert;
  for (double h : {0.04, 0.02, 0.01}) {
    const GridDomain d = scenarios::gzbar_domain(h);
    const ComplexField g = scenarios::gzbar(d);
    const RealField K1(d, 1.0);
    base.push_back(commutator_residual(cc, g, K1, coeffs_s3(g, K1)).report.summary.max);
    const RealField K = sample(d, [](double x, double) { return 1 + 0.3 * x; });
    pert.push_back(commutator_residual(cc, g, K, coeffs_s3(g, K)).report.summary.max);
  }
  EXPECT_GT(base[0] / base[1], 3.5);
  EXPECT_GT(base[1] / base[2], 3.5);
  EXPECT_GT(pert[2], 0.5 * pert[0]);
  EXPECT_GT(pert[2], 1e-2);
}

TEST(Commutator, FlatHarmonic) {
  const ConnectionCoefficients cc = christoffel({0, 0, 0});
  std::vector<double> v;
  for (double h : {0.04, 0.02}) {
    const GridDomain d = scenarios::gzbar_domain(h);
    const ComplexField g = scenarios::gzbar(d);
    const RealField K(d, 1.0);
    v.push_back(commutator_residual(cc, g, K, solve_linear_e11(cc, g, K)).report.summary.max);
  }
  EXPECT_LT(v[1], 5 * 0.02 * 0.02);
  EXPECT_TRUE(v[1] < 1e-10 || v[0] / v[1] > 3.5);
}

TEST(Parallel, NormalIsParallel) {
  auto r = test::rng(17);
  std::normal_distribution<double> n(0, 1);
  for (int k = 0; k < 50; ++k) {
    const cplx g(n(r), n(r));
    const Vec3 N = stereo_unproject(g);
    EXPECT_LT(std::abs(parallel_defect(g, 2.5 * N)), 1e-12);
    EXPECT_GT(std::abs(parallel_defect(g, N.cross(Vec3(n(r), n(r), n(r))))), 0.0);
  }
}
