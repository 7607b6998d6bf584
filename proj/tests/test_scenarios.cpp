#include "liesurf/mesh_io.hpp"
#include "liesurf/scenarios.hpp"

#include "test_util.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace liesurf;

namespace {

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string temp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("liesurf_test_" + name)).string();
}

}  // namespace

TEST(Pseudosphere, ClosedFormsConsistent) {
  const GridDomain d = scenarios::pseudosphere_domain(0.05);
  const auto sc = scenarios::scenario_pseudosphere(d);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const auto [i, j] = d.ij(k);
    EXPECT_NEAR(sc.N[k].norm(), 1, 1e-12);
    EXPECT_LT(std::abs(stereo_project(sc.N[k]) - scenarios::pseudosphere_g_radical(d.x(i), d.y(j))), 1e-12);
    EXPECT_LT(std::abs(sc.g[k] - scenarios::pseudosphere_g_radical(d.x(i), d.y(j))), 1e-12);
    EXPECT_EQ(sc.K_star[k], -1);
  }
}

TEST(Pseudosphere, JetDerivatives) {
  const double h = 1e-5;
  for (auto [u, v] : {std::pair{-0.7, 0.4}, {-1.5, 1.9}, {0.2, 0.3}}) {
    const auto j = scenarios::pseudosphere_jet(u, v);
    const auto g = [](double a, double b) { return scenarios::pseudosphere_jet(a, b).g; };
    EXPECT_LT(std::abs(j.g_u - (g(u + h, v) - g(u - h, v)) / (2 * h)), 1e-9);
    EXPECT_LT(std::abs(j.g_v - (g(u, v + h) - g(u, v - h)) / (2 * h)), 1e-9);
    const cplx guv = (g(u + h, v + h) - g(u + h, v - h) - g(u - h, v + h) + g(u - h, v - h)) / (4 * h * h);
    EXPECT_LT(std::abs(j.g_uv - guv), 1e-5);
  }
}

TEST(Pseudosphere, NormalOfPsi) {
  const double h = 1e-6;
  const double u = -0.8, v = 0.6;
  const Vec3 pu = (scenarios::pseudosphere_psi(u + h, v) - scenarios::pseudosphere_psi(u - h, v)) / (2 * h);
  const Vec3 pv = (scenarios::pseudosphere_psi(u, v + h) - scenarios::pseudosphere_psi(u, v - h)) / (2 * h);
  const Vec3 N = scenarios::pseudosphere_N_radical(u, v);
  EXPECT_LT(std::abs(N.dot(pu)), 1e-8);
  EXPECT_LT(std::abs(N.dot(pv)), 1e-8);
}

TEST(Pseudosphere, MeasuredCurvature) {
  const auto sc = scenarios::scenario_pseudosphere(scenarios::pseudosphere_domain(1e-2));
  EXPECT_LT(embed_oracle_forms(sc.psi, 4, 2).max_deviation([](std::size_t) { return -1.0; }), 1e-6);
}

TEST(Pseudosphere, DomainChecks) {
  EXPECT_THROW(scenarios::scenario_pseudosphere(GridDomain::covering(-1, 0.5, 0, 1, 0.1, GridKind::NullUV)),
               DomainError);
  EXPECT_THROW(scenarios::scenario_pseudosphere(GridDomain::covering(-1, -0.5, 0, 1, 0.1, GridKind::ConformalZ)),
               KindMismatch);
  const GridDomain d = scenarios::pseudosphere_domain(0.005);
  EXPECT_EQ(d.n1, 361u);
  EXPECT_GE((d.y0 - d.x1()) / 2, scenarios::kStripMin - 1e-12);
}

TEST(Gzbar, Values) {
  const GridDomain d = scenarios::gzbar_domain(0.25);
  const ComplexField g = scenarios::gzbar(d);
  EXPECT_EQ(g.at(0, 0), cplx(-0.5, 0.5));
  EXPECT_THROW(scenarios::gzbar(scenarios::pseudosphere_domain(0.1)), KindMismatch);
}

TEST(MeshIo, ObjAndPly) {
  const SurfaceSample s = scenarios::distance_sphere(0.6, 0.5);
  const R3Mesh m = stereo_s3_to_r3(s);
  const std::string obj = temp("m.obj"), ply = temp("m.ply");
  write_obj(m, obj);
  write_ply(m, ply);
  const std::string o = read(obj), p = read(ply);
  std::size_t v = 0, f = 0;
  std::istringstream lines(o);
  for (std::string l; std::getline(lines, l);) {
    v += l.rfind("v ", 0) == 0;
    f += l.rfind("f ", 0) == 0;
  }
  EXPECT_EQ(v, m.vertices.size());
  EXPECT_EQ(f, m.quads.size());
  EXPECT_NE(p.find("element vertex " + std::to_string(m.vertices.size())), std::string::npos);
  EXPECT_NE(p.find("element face " + std::to_string(m.quads.size())), std::string::npos);
  EXPECT_THROW(write_obj(m, "/nonexistent/dir/x.obj"), Error);
}

TEST(MeshIo, ProfileCsv) {
  const RevolutionResult r = revolution_ode(-2, 0.1, 0.5, 1e-2, 0.1);
  const std::string path = temp("profile.csv");
  write_profile_csv(r.profile, path);
  const std::string text = read(path);
  EXPECT_EQ(text.rfind("s,alpha,beta,gamma\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')), r.profile.s.size() + 1);
}

TEST(MeshIo, Deterministic) {
  const SurfaceSample s = scenarios::great_sphere(0.3);
  const std::string a = temp("a.csv"), b = temp("b.csv");
  write_sample_csv(s, a);
  write_sample_csv(scenarios::great_sphere(0.3), b);
  EXPECT_EQ(read(a), read(b));
}
