#include "liesurf/frame_negative.hpp"

#include "liesurf/frame_positive.hpp"
#include "liesurf/pde_coefficients.hpp"

#include <Eigen/LU>

namespace liesurf {

namespace {

Mat3 cross_matrix(const Vec3& n) {
  Mat3 m;
  m << 0, -n[2], n[1], n[2], 0, -n[0], -n[1], n[0], 0;
  return m;
}

}  // namespace

N22Solution solve_n22_at(const ConnectionCoefficients& cc, const NullJet& j) {
  if (!(j.K < 0)) throw DomainError("negative branch requires K < 0");
  const Vec3 N = stereo_unproject(j.g);
  const Mat3 P = Mat3::Identity() - N * N.transpose();
  const Mat3 PD = P * cc.mu.vec().asDiagonal();
  const Mat3 X = cross_matrix(N);
  const double r = std::sqrt(-j.K);
  N22Solution out;
  auto solve = [&](cplx dg, double s, double& det) {
    const Vec3 Nd = gauss_derivative(j.g, dg, std::conj(dg)).real();
    const Mat3 M = Mat3::Identity() - s * PD;
    det = M.determinant();
    if (std::abs(det) < 1e-12) throw SingularSystem("singular null frame system", 0);
    return CVec3(M.partialPivLu().solve(s * (X * Nd)).cast<cplx>());
  };
  out.frame.a = solve(j.g_u, 1 / r, out.det_u);
  out.frame.A = solve(j.g_v, -1 / r, out.det_v);
  return out;
}

double forbidden_curvature_mu(const Mu& mu) { return -mu.mu1 * mu.mu1; }

double forbidden_curvature_g(const Mu& mu, cplx g) {
  const double s = std::norm(g), B = 1 + s;
  const double q = (s - 1) * (s - 1) * mu.mu1 + 4 * s * mu.mu3;
  return -q * q / (B * B * B * B);
}

void check_forbidden(const Mu& mu, cplx g, double K, std::size_t node) {
  if (std::abs(K - forbidden_curvature_mu(mu)) < 1e-10 || std::abs(K - forbidden_curvature_g(mu, g)) < 1e-10)
    throw ForbiddenCurvature("curvature at an excluded value", node);
}

NullPair negative_closed_at(const Mu& mu, const NullJet& j) {
  require_mu12(mu);
  if (!(j.K < 0)) throw DomainError("negative branch requires K < 0");
  check_forbidden(mu, j.g, j.K);
  const double m1 = mu.mu1, m3 = mu.mu3, r = std::sqrt(-j.K);
  const cplx g = j.g, gb = std::conj(g), A = g * g - 1.0, Ab = std::conj(A);
  const cplx C = g - gb, Ct = g + gb;
  const double s = std::norm(g), B = 1 + s;
  const cplx gu = j.g_u, gv = j.g_v, gbu = std::conj(gu), gbv = std::conj(gv);
  const double dm = r * B * B - (B - 2) * (B - 2) * m1 - 4 * s * m3;
  const double dp = r * B * B + (B - 2) * (B - 2) * m1 + 4 * s * m3;
  NullPair p;
  p.a[0] = I * (r * B * (Ab * gu - A * gbu) + (B - 2) * (-(Ab + 2.0) * gu + (A + 2.0) * gbu) * m1 +
                2.0 * C * (gb * gu + g * gbu) * m3) /
           (B * (r - m1) * dm);
  p.a[1] = (-r * B * (gu * (Ab + 2.0) + gbu * (A + 2.0)) + (B - 2) * (Ab * gu + A * gbu) * m1 +
            2.0 * Ct * (gb * gu + g * gbu) * m3) /
           (B * (r - m1) * dm);
  p.a[2] = 2.0 * I * (-gb * gu + g * gbu) / dm;
  p.A[0] = -I * (r * B * (Ab * gv - A * gbv) + (B - 2) * ((Ab + 2.0) * gv - (A + 2.0) * gbv) * m1 -
                 2.0 * C * (gb * gv + g * gbv) * m3) /
           (B * (r + m1) * dp);
  p.A[1] = (r * B * (gv * (Ab + 2.0) + gbv * (A + 2.0)) + (B - 2) * (Ab * gv + A * gbv) * m1 +
            2.0 * Ct * (gb * gv + g * gbv) * m3) /
           (B * (r + m1) * dp);
  p.A[2] = -2.0 * I * (-gb * gv + g * gbv) / dp;
  return p;
}

NullFundamentalForms forms_s3_negative_at(const NullJet& j) {
  if (std::abs(j.K + 1) < 1e-10) throw ForbiddenCurvature("K = -1 is excluded on S3", 0);
  const double r = std::sqrt(-j.K), B = 1 + std::norm(j.g);
  NullFundamentalForms f;
  f.Euu = 4 * std::norm(j.g_u) / ((1 - r) * (1 - r) * B * B);
  f.Fuv = 4 * std::real(j.g_u * std::conj(j.g_v)) / ((1 + j.K) * B * B);
  f.Gvv = 4 * std::norm(j.g_v) / ((1 + r) * (1 + r) * B * B);
  f.D = f.Euu * f.Gvv - f.Fuv * f.Fuv;
  f.f = std::sqrt(std::max(0.0, -j.K * f.D));
  return f;
}

NullFundamentalForms null_forms_from_frame(const NullPair& p, double K) {
  const Vec3 a = p.a.real(), A = p.A.real();
  NullFundamentalForms f;
  f.Euu = a.squaredNorm();
  f.Fuv = a.dot(A);
  f.Gvv = A.squaredNorm();
  f.D = f.Euu * f.Gvv - f.Fuv * f.Fuv;
  f.f = std::sqrt(std::max(0.0, -K * f.D));
  return f;
}

NullData NullData::from(const ComplexField& g, const RealField& K) {
  if (g.domain.kind != GridKind::NullUV) throw KindMismatch("negative branch needs a null-uv grid");
  const ComplexField gu = differentiate(g, DiffOp::d_u);
  const ComplexField gv = differentiate(g, DiffOp::d_v);
  return from_exact(g, gu, gv, differentiate(gu, DiffOp::d_v), K);
}

NullData NullData::from_exact(const ComplexField& g, const ComplexField& g_u, const ComplexField& g_v,
                              const ComplexField& g_uv, const RealField& K) {
  if (g.domain.kind != GridKind::NullUV) throw KindMismatch("negative branch needs a null-uv grid");
  NullData d;
  d.g = g;
  d.g_u = g_u;
  d.g_v = g_v;
  d.g_uv = g_uv;
  d.K = K;
  d.K_u = axis_derivative(K, 0);
  d.K_v = axis_derivative(K, 1);
  return d;
}

void NullFrameCoefficients::put(std::size_t k, const NullPair& p) {
  a1[k] = p.a[0]; a2[k] = p.a[1]; a3[k] = p.a[2];
  A1[k] = p.A[0]; A2[k] = p.A[1]; A3[k] = p.A[2];
}

namespace {

void require_negative(const RealField& K) {
  for (std::size_t k = 0; k < K.size(); ++k)
    if (!(K[k] < 0)) throw DomainError("negative branch requires K < 0 at node " + std::to_string(k));
}

}  // namespace

NullFrameCoefficients solve_linear_n22(const ConnectionCoefficients& cc, const NullData& d) {
  require_negative(d.K);
  NullFrameCoefficients out(d.g.domain);
  for (std::size_t k = 0; k < d.g.size(); ++k) {
    if (!d.valid(k)) {
      out.valid[k] = 0;
      continue;
    }
    try {
      out.put(k, solve_n22_at(cc, d.jet(k)).frame);
    } catch (const SingularSystem&) {
      throw SingularSystem("singular null frame system", k);
    }
  }
  return out;
}

NullFrameCoefficients solve_linear_n22(const ConnectionCoefficients& cc, const ComplexField& g,
                                       const RealField& K) {
  return solve_linear_n22(cc, NullData::from(g, K));
}

NullFrameCoefficients coeffs_negative_closed(const Mu& mu, const NullData& d) {
  require_mu12(mu);
  require_negative(d.K);
  NullFrameCoefficients out(d.g.domain);
  for (std::size_t k = 0; k < d.g.size(); ++k) {
    if (!d.valid(k)) {
      out.valid[k] = 0;
      continue;
    }
    try {
      out.put(k, negative_closed_at(mu, d.jet(k)));
    } catch (const ForbiddenCurvature&) {
      throw ForbiddenCurvature("curvature at an excluded value", k);
    }
  }
  return out;
}

NullFrameCoefficients coeffs_negative_closed(const Mu& mu, const ComplexField& g, const RealField& K) {
  return coeffs_negative_closed(mu, NullData::from(g, K));
}

RealField admissible_negative(const ComplexField& g) {
  if (g.domain.kind != GridKind::NullUV) throw KindMismatch("margin needs a null-uv grid");
  const ComplexField gu = differentiate(g, DiffOp::d_u);
  const ComplexField gv = differentiate(g, DiffOp::d_v);
  RealField m(g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) m[k] = -2 * std::imag(gu[k] * std::conj(gv[k]));
  return m;
}

Field<NullFundamentalForms> forms_s3_negative(const ComplexField& g, const RealField& K) {
  require_negative(K);
  const NullData d = NullData::from(g, K);
  Field<NullFundamentalForms> out(g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) {
    try {
      out[k] = forms_s3_negative_at(d.jet(k));
    } catch (const ForbiddenCurvature&) {
      throw ForbiddenCurvature("K = -1 is excluded on S3", k);
    }
  }
  return out;
}

namespace {

bool counted(const NullData& d, std::size_t k) {
  return d.valid(k) && std::abs(negative_margin(d.jet(k))) > kAdmissibleMargin;
}

}  // namespace

NegIntegrabilityReport integrability_residual_neg(const ComplexField& g, const RealField& K) {
  require_negative(K);
  const NullData d = NullData::from(g, K);
  const RealField l1 = map(K, [](double k) {
    const double r = std::sqrt(-k);
    return std::log(std::pow(1 + r, 4) / -k);
  });
  const RealField l2 = map(K, [](double k) {
    const double r = std::sqrt(-k);
    return std::log(std::pow(r - 1, 4) / -k);
  });
  const RealField L1 = axis_derivative(l1, 0), L2 = axis_derivative(l2, 1);
  NegIntegrabilityReport out{ResidualReport("null_line_u", g.domain), ResidualReport("null_line_v", g.domain)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!counted(d, k) || std::abs(K[k] + 1) < 1e-10) continue;
    const cplx g0 = g[k], gb = std::conj(g0), gu = d.g_u[k], gv = d.g_v[k];
    const cplx gbu = std::conj(gu), gbv = std::conj(gv), guv = d.g_uv[k], gbuv = std::conj(guv);
    const double B = 1 + std::norm(g0);
    const cplx den = gbu * gv - gu * gbv;
    const cplx R1 = 4.0 / den * (gbu * guv - gu * gbuv + 2.0 * std::norm(gu) * (g0 * gbv - gb * gv) / B);
    const cplx R2 = -4.0 / den * (gbv * guv - gv * gbuv + 2.0 * std::norm(gv) * (g0 * gbu - gb * gu) / B);
    out.line_u.set(k, std::abs(L1[k] - R1));
    out.line_v.set(k, std::abs(L2[k] - R2));
  }
  out.line_u.finalize();
  out.line_v.finalize();
  return out;
}

ResidualReport lorentz_harmonic_residual(const ComplexField& g) {
  if (g.domain.kind != GridKind::NullUV) throw KindMismatch("Lorentz residual needs a null-uv grid");
  const ComplexField gu = differentiate(g, DiffOp::d_u);
  const ComplexField gv = differentiate(g, DiffOp::d_v);
  const ComplexField guv = differentiate(gu, DiffOp::d_v);
  ResidualReport rep("lorentz_harmonic", g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!node_valid(g[k])) continue;
    const double B = 1 + std::norm(g[k]);
    rep.set(k, std::abs(guv[k] - 2.0 * gu[k] * gv[k] * std::conj(g[k]) / B));
  }
  rep.finalize();
  return rep;
}

ResidualReport pde_residual_t3(const Mu& mu, const ComplexField& g, const RealField& K) {
  require_mu12(mu);
  require_negative(K);
  const NullData d = NullData::from(g, K);
  ResidualReport rep("g_equation_null", g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!counted(d, k)) continue;
    check_forbidden(mu, g[k], K[k], k);
    const GTable G = pde_coefficients(K[k], I * std::sqrt(-K[k]), g[k], mu.mu1, mu.mu3);
    const cplx gu = d.g_u[k], gv = d.g_v[k];
    const cplx rhs = pde_rhs(G, gu, gv, std::conj(gu), std::conj(gv), d.K_u[k], d.K_v[k]);
    rep.set(k, std::abs(d.g_uv[k] - rhs));
  }
  rep.finalize();
  return rep;
}

ResidualReport null_commutator_residual(const ConnectionCoefficients& cc, const NullFrameCoefficients& f) {
  const GridDomain& dom = f.domain();
  Field<CVec3> a(dom, CVec3::Zero()), A(dom, CVec3::Zero());
  for (std::size_t k = 0; k < dom.size(); ++k) {
    a[k] = f.a(k);
    A[k] = f.A(k);
  }
  const Field<CVec3> Au = axis_derivative(A, 0), av = axis_derivative(a, 1);
  ResidualReport rep("null_commutator", dom);
  for (std::size_t k = 0; k < dom.size(); ++k) {
    if (!f.valid[k]) continue;
    const CVec3 V = Au[k] - av[k] + cc.nabla(a[k], A[k]) - cc.nabla(A[k], a[k]);
    rep.set(k, V.norm());
  }
  rep.finalize();
  return rep;
}

}  // namespace liesurf
