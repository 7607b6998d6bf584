#include "app.hpp"

#include "liesurf/correspondence.hpp"
#include "liesurf/frame_negative.hpp"
#include "liesurf/frame_positive.hpp"
#include "liesurf/mesh_io.hpp"
#include "liesurf/scenarios.hpp"
#include "liesurf/su2.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>

namespace liesurf::app {

namespace fs = std::filesystem;

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config " + path);
  const json j = json::parse(in, nullptr, true, true);
  Config c;
  const json t = j.value("tolerance", json::object());
  c.algebraic = t.value("algebraic", c.algebraic);
  c.fd_scale = t.value("fd_scale", c.fd_scale);
  c.oracle_scale = t.value("oracle_scale", c.oracle_scale);
  c.loop_scale = t.value("loop_scale", c.loop_scale);
  c.line_tol = t.value("line_tol", c.line_tol);
  return c;
}

json Config::to_json() const {
  return {{"tolerance",
           {{"algebraic", algebraic},
            {"fd_scale", fd_scale},
            {"oracle_scale", oracle_scale},
            {"loop_scale", loop_scale},
            {"line_tol", line_tol}}}};
}

Branch ScenarioSpec::resolved_branch() const {
  if (branch) return *branch;
  if (name == "s5-pseudosphere") return Branch::Negative;
  if (k && *k < 0) return Branch::Negative;
  return Branch::Positive;
}

json ScenarioSpec::to_json() const {
  json j{{"scenario", name},
         {"group", group.name()},
         {"tau", group.tau},
         {"branch", resolved_branch() == Branch::Negative ? "negative" : "positive"},
         {"config", config.to_json()}};
  if (h) j["h"] = *h;
  if (k) j["k"] = *k;
  if (!k_file.empty()) j["k_file"] = k_file;
  if (!g_file.empty()) j["g_file"] = g_file;
  if (base) j["base"] = *base;
  return j;
}

Manifest::Manifest(std::string command, const ScenarioSpec& spec)
    : command_(std::move(command)), spec_(spec.to_json()), out_(spec.out) {
  fs::create_directories(out_);
}

void Manifest::check(std::string name, double value, double tolerance) {
  if (std::isnan(value)) value = std::numeric_limits<double>::infinity();
  checks_.push_back({std::move(name), value, tolerance});
}

void Manifest::artifact(const std::string& path) { artifacts_.push_back(path); }
void Manifest::note(const std::string& key, json value) { notes_[key] = std::move(value); }
void Manifest::fail(const std::string& error) { errors_.push_back(error); }

bool Manifest::passed() const {
  return errors_.empty() && std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.passed(); });
}

json Manifest::to_json() const {
  json checks = json::array(), failures = json::array();
  for (const Check& c : checks_) {
    checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed()}});
    if (!c.passed()) failures.push_back(c.name);
  }
  for (const std::string& e : errors_) failures.push_back(e);
  return {{"command", command_}, {"spec", spec_},      {"checks", checks},   {"artifacts", artifacts_},
          {"notes", notes_},     {"passed", passed()}, {"failures", failures}};
}

int Manifest::finish() const {
  const json j = to_json();
  const std::string path = (fs::path(out_) / "manifest.json").string();
  std::ofstream(path) << j.dump(2) << '\n';
  for (const Check& c : checks_)
    std::cout << (c.passed() ? "ok    " : "FAIL  ") << c.name << " = " << c.value << " (tol " << c.tolerance
              << ")\n";
  for (const std::string& e : errors_) std::cout << "ERROR " << e << '\n';
  std::cout << (passed() ? "passed" : "failed") << "; manifest " << path << '\n';
  return passed() ? 0 : 1;
}

namespace {

std::string out_path(const ScenarioSpec& s, const std::string& file) { return (fs::path(s.out) / file).string(); }

double step(const GridDomain& d) { return std::max(d.h1, d.h2); }
double fd_tol(const ScenarioSpec& s, const GridDomain& d) { return s.config.fd_scale * step(d) * step(d); }

bool is_pseudosphere(const ScenarioSpec& s) { return s.name == "s5-pseudosphere" && s.g_file.empty(); }

GridDomain domain_for(const ScenarioSpec& s) {
  if (!s.grid_file.empty()) return read_grid_sidecar(s.grid_file);
  if (s.name == "s5-pseudosphere") return scenarios::pseudosphere_domain(s.h.value_or(0.02));
  if (s.name == "gzbar") return scenarios::gzbar_domain(s.h.value_or(0.02));
  throw InvalidArgument("scenario '" + s.name + "' has no Gauss map; use s5-pseudosphere or gzbar");
}

ComplexField gauss_map(const ScenarioSpec& s, const GridDomain& d) {
  if (!s.g_file.empty()) return read_complex_csv(s.g_file, d);
  if (s.name == "s5-pseudosphere") return scenarios::scenario_pseudosphere(d).g;
  return scenarios::gzbar(d);
}

RealField curvature(const ScenarioSpec& s, const GridDomain& d, double fallback) {
  RealField K = s.k_file.empty() ? RealField(d, s.k.value_or(fallback)) : read_real_csv(s.k_file, d);
  const bool negative = s.resolved_branch() == Branch::Negative;
  for (double k : K.values)
    if (negative ? !(k < 0) : !(k > 0))
      throw InvalidArgument(std::string("curvature sign does not match the ") +
                            (negative ? "negative" : "positive") + " branch");
  return K;
}

bool mu12(const Mu& mu) { return mu.mu1 == mu.mu2; }

void report(Manifest& m, const ScenarioSpec& s, const ResidualReport& r, double tol) {
  const std::string path = out_path(s, r.name + ".csv");
  r.write_csv(path);
  m.artifact(path);
  m.check(r.name, r.summary.max, tol);
}

NullData null_data(const ScenarioSpec& s, const ComplexField& g, const RealField& K) {
  if (is_pseudosphere(s)) return scenarios::scenario_pseudosphere(g.domain).data(K);
  return NullData::from(g, K);
}

double max_diff(const ComplexField& a, const ComplexField& b, const std::vector<std::uint8_t>& valid) {
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (valid[k]) m = std::max(m, std::abs(a[k] - b[k]) / std::max(1.0, std::abs(b[k])));
  return m;
}

void verify_negative(Manifest& m, const ScenarioSpec& s) {
  const GridDomain d = domain_for(s);
  const ComplexField g = gauss_map(s, d);
  const RealField K = curvature(s, d, -2);
  const double tol = fd_tol(s, d);
  const Mu mu = s.group.mu();
  const ConnectionCoefficients cc = christoffel(mu);
  const NullData data = null_data(s, g, K);
  if (s.group.kind == GroupKind::S3) {
    const NegIntegrabilityReport lines = integrability_residual_neg(g, K);
    report(m, s, lines.line_u, tol);
    report(m, s, lines.line_v, tol);
    report(m, s, lorentz_harmonic_residual(g), tol);
  }
  const NullFrameCoefficients solved = solve_linear_n22(cc, data);
  report(m, s, null_commutator_residual(cc, solved), tol);
  if (mu12(mu)) {
    report(m, s, pde_residual_t3(mu, g, K), tol);
    const NullFrameCoefficients closed = coeffs_negative_closed(mu, data);
    std::vector<std::uint8_t> valid(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) valid[k] = solved.valid[k] && closed.valid[k];
    double dev = 0;
    for (const auto& [a, b] : {std::pair{&solved.a1, &closed.a1}, {&solved.a2, &closed.a2}, {&solved.a3, &closed.a3},
                               {&solved.A1, &closed.A1}, {&solved.A2, &closed.A2}, {&solved.A3, &closed.A3}})
      dev = std::max(dev, max_diff(*a, *b, valid));
    m.check("closed_forms_vs_solver", dev, s.config.algebraic);
  }
}

void verify_positive(Manifest& m, const ScenarioSpec& s) {
  const GridDomain d = domain_for(s);
  const ComplexField g = gauss_map(s, d);
  const RealField K = curvature(s, d, 1);
  const double tol = fd_tol(s, d), h = step(d);
  const Mu mu = s.group.mu();
  const ConnectionCoefficients cc = christoffel(mu);
  const FrameCoefficients solved = solve_linear_e11(cc, g, K);
  report(m, s, commutator_residual(cc, g, K, solved).report, tol);
  if (mu12(mu)) {
    report(m, s, pde_residual_t1(mu, g, K), tol);
    const FrameCoefficients closed = coeffs_unimodular_closed(mu, g, K);
    std::vector<std::uint8_t> valid(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) valid[k] = solved.valid[k] && closed.valid[k];
    double dev = 0;
    for (const auto& [a, b] : {std::pair{&solved.a1, &closed.a1}, {&solved.a2, &closed.a2}, {&solved.a3, &closed.a3}})
      dev = std::max(dev, max_diff(*a, *b, valid));
    m.check("closed_forms_vs_solver", dev, s.config.algebraic);
  }
  if (s.group.kind == GroupKind::S3) {
    const S3IntegrabilityReport log_grad = integrability_residual_s3(g, K);
    report(m, s, log_grad.log_gradient, tol);
    report(m, s, log_grad.identity, tol);
    report(m, s, harmonic_residual(g), tol);
    m.check("loop_closure", max_loop_closure_defect(tangents(solved), Target::S3, 2), s.config.loop_scale * h * h * h);
  }
}

/// Integrated sample for the S3 / R3 reconstruction.
struct Reconstruction {
  SurfaceSample sample;
  RealField K;
  double loop = 0;
};

Reconstruction reconstruct(const ScenarioSpec& s) {
  const bool s3 = s.group.kind == GroupKind::S3;
  if (!s3 && s.group.kind != GroupKind::R3)
    throw InvalidArgument("surfaces are integrated only in S3 and R3 (group " + s.group.name() + ")");
  const GridDomain d = domain_for(s);
  const ComplexField g = gauss_map(s, d);
  const Target target = s3 ? Target::S3 : Target::R3;
  Reconstruction r;
  TangentField t;
  if (s.resolved_branch() == Branch::Negative) {
    r.K = curvature(s, d, s3 ? -2 : -1);
    t = tangents(coeffs_negative_closed(s.group.mu(), null_data(s, g, r.K)));
  } else {
    r.K = curvature(s, d, 1);
    t = tangents(coeffs_unimodular_closed(s.group.mu(), g, r.K));
  }
  r.loop = max_loop_closure_defect(t, target, 2);
  r.sample = s3 ? integrate_frame(t, Quat::identity()) : r3_integrate(t, Vec3::Zero());
  return r;
}

void oracle_check(Manifest& m, const ScenarioSpec& s, const SurfaceSample& sample,
                  const std::function<double(std::size_t)>& K_ref) {
  const OracleResult o = embed_oracle_forms(sample, 2, 2);
  const double h = step(sample.domain);
  m.check("oracle_K_ext", o.max_deviation(K_ref), s.config.oracle_scale * h * h);
}

void export_mesh(Manifest& m, const ScenarioSpec& s, const SurfaceSample& sample, const std::string& stem) {
  if (s.export_format.empty()) return;
  const R3Mesh mesh = sample.in_s3 ? stereo_s3_to_r3(sample, s.pole) : mesh_from_r3(sample);
  const std::size_t flagged = static_cast<std::size_t>(std::count(mesh.pole_flag.begin(), mesh.pole_flag.end(), 1));
  m.note("pole_flagged_vertices", flagged);
  const std::string path = out_path(s, stem + "." + s.export_format);
  if (s.export_format == "obj")
    write_obj(mesh, path);
  else if (s.export_format == "ply")
    write_ply(mesh, path);
  else
    throw InvalidArgument("unknown export format " + s.export_format);
  m.artifact(path);
}

template <class Body>
int guarded(const std::string& command, const ScenarioSpec& s, Body&& body) {
  Manifest m(command, s);
  try {
    body(m);
  } catch (const Error& e) {
    m.fail(e.what());
  }
  return m.finish();
}

}  // namespace

int run_verify(const ScenarioSpec& s) {
  return guarded("verify", s, [&](Manifest& m) {
    if (s.resolved_branch() == Branch::Negative)
      verify_negative(m, s);
    else
      verify_positive(m, s);
  });
}

int run_reconstruct(const ScenarioSpec& s) {
  return guarded("reconstruct", s, [&](Manifest& m) {
    const Reconstruction r = reconstruct(s);
    const GridDomain& d = r.sample.domain;
    const double h = step(d);
    m.check("loop_closure", r.loop, s.config.loop_scale * h * h * h);
    if (r.sample.in_s3) m.check("unit_norm_drift", r.sample.max_raw_drift, 1e-8);
    oracle_check(m, s, r.sample, [&](std::size_t k) { return r.K[k]; });
    if (is_pseudosphere(s) && !r.sample.in_s3) {
      const auto sc = scenarios::scenario_pseudosphere(d);
      std::vector<Vec3> a(d.size()), b(d.size());
      for (std::size_t k = 0; k < d.size(); ++k) {
        a[k] = r.sample.r3(k);
        b[k] = sc.psi.r3(k);
      }
      m.check("rigid_deviation_from_psi", rigid_deviation(a, b, true), s.config.fd_scale * h * h);
    }
    const std::string path = out_path(s, "surface.csv");
    write_sample_csv(r.sample, path);
    m.artifact(path);
    export_mesh(m, s, r.sample, "surface");
  });
}

int run_correspond(const ScenarioSpec& s) {
  return guarded("correspond", s, [&](Manifest& m) {
    const GridDomain d = domain_for(s);
    const bool negative = s.resolved_branch() == Branch::Negative;
    const bool to_s3 = s.direction == "r3-to-s3";
    if (!to_s3 && s.direction != "s3-to-r3") throw InvalidArgument("direction must be r3-to-s3 or s3-to-r3");
    if (!s.base) throw GaugeUnderdetermined("correspondence needs --base (curvature of the target at the grid origin)");
    const double tol = fd_tol(s, d);
    RealField K, K_star;
    if (to_s3) {
      // Source: the R3 curvature (pseudosphere K* = -1 unless overridden).
      K_star = curvature(s, d, negative ? -1 : 1);
      K = negative ? inverse_transfer_negative(K_star, *s.base) : inverse_transfer_positive(K_star, *s.base);
      const CorrespondenceResult back = negative ? transfer_negative(K, K_star[0], s.config.line_tol)
                                                 : transfer_positive(K, K_star[0]);
      double dev = 0;
      for (std::size_t k = 0; k < d.size(); ++k)
        dev = std::max(dev, std::abs(back.K_target[k] - K_star[k]) / std::abs(K_star[k]));
      m.check("round_trip", dev, s.config.algebraic);
    } else {
      K = curvature(s, d, negative ? -2 : 1);
      const CorrespondenceResult r =
          negative ? transfer_negative(K, *s.base, s.config.line_tol) : transfer_positive(K, *s.base);
      K_star = r.K_target;
      if (negative) m.check("line_consistency", r.path_dependence, s.config.line_tol);
    }
    report(m, s, negative ? condition_negative(K) : condition_positive(K), tol);
    const auto [lo, hi] = std::minmax_element(K.values.begin(), K.values.end());
    const auto [slo, shi] = std::minmax_element(K_star.values.begin(), K_star.values.end());
    m.note("K_range", {*lo, *hi});
    m.note("K_star_range", {*slo, *shi});
    for (const auto& [f, name] : {std::pair{&K, "K.csv"}, {&K_star, "K_star.csv"}}) {
      const std::string path = out_path(s, name);
      write_csv(*f, path);
      m.artifact(path);
    }
  });
}

int run_oracle(const ScenarioSpec& s) {
  return guarded("oracle", s, [&](Manifest& m) {
    const double h = s.h.value_or(0.02);
    if (s.name == "distance-sphere" || s.name == "great-sphere") {
      const double r = s.name == "great-sphere" ? std::numbers::pi / 2 : s.radius;
      const double c = std::cos(r) / std::sin(r);
      const SurfaceSample sample = scenarios::distance_sphere(r, h);
      oracle_check(m, s, sample, [&](std::size_t) { return c * c; });
      m.note("expected_K_ext", c * c);
      export_mesh(m, s, sample, s.name);
    } else if (is_pseudosphere(s) && s.group.kind == GroupKind::R3) {
      const auto sc = scenarios::scenario_pseudosphere(domain_for(s));
      oracle_check(m, s, sc.psi, [](std::size_t) { return -1.0; });
      export_mesh(m, s, sc.psi, "pseudosphere");
    } else {
      const Reconstruction r = reconstruct(s);
      oracle_check(m, s, r.sample, [&](std::size_t k) { return r.K[k]; });
      export_mesh(m, s, r.sample, s.name);
    }
  });
}

int run_export(const ScenarioSpec& spec) {
  ScenarioSpec s = spec;
  if (s.export_format.empty()) s.export_format = "obj";
  return guarded("export", s, [&](Manifest& m) {
    if (is_pseudosphere(s) && s.group.kind == GroupKind::S3) {
      const double K = s.k.value_or(-2), h = s.h.value_or(1e-2);
      const RevolutionResult r = revolution_ode(K, 0.1, 2.0, h, 2 * std::numbers::pi, 0.05);
      m.check("unit_norm_drift", r.profile.max_raw_drift, 1e-8);
      const OracleResult o = embed_oracle_forms(r.surface, 4, 3);
      m.check("oracle_K_ext", o.max_deviation([&](std::size_t) { return K; }), 1e-4);
      m.note("X", {r.X[0], r.X[1], r.X[2]});
      m.note("kappa", r.kappa);
      const std::string path = out_path(s, "profile.csv");
      write_profile_csv(r.profile, path);
      m.artifact(path);
      export_mesh(m, s, r.surface, "revolution");
    } else if (is_pseudosphere(s)) {
      export_mesh(m, s, scenarios::scenario_pseudosphere(domain_for(s)).psi, "pseudosphere");
    } else if (s.name == "distance-sphere" || s.name == "great-sphere") {
      const double r = s.name == "great-sphere" ? std::numbers::pi / 2 : s.radius;
      export_mesh(m, s, scenarios::distance_sphere(r, s.h.value_or(0.02)), s.name);
    } else {
      export_mesh(m, s, reconstruct(s).sample, s.name);
    }
  });
}

}  // namespace liesurf::app
