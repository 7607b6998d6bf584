#include "liesurf/frame_positive.hpp"

#include "liesurf/pde_coefficients.hpp"

#include <Eigen/LU>

namespace liesurf {

AuxiliaryScalars AuxiliaryScalars::at(cplx g, const Mu& mu, double K) {
  AuxiliaryScalars s;
  const cplx gb = std::conj(g);
  s.A = g * g - 1.0;
  s.Abar = std::conj(s.A);
  s.B = 1 + std::norm(g);
  s.C = g - gb;
  s.Ct = g + gb;
  s.L = 2.0 * I * std::sqrt(K) + mu.mu1 + mu.mu2;
  return s;
}

double poly_P(const std::array<double, 5>& m, double s) {
  return m[0] + s * (m[1] + s * (m[2] + s * (m[3] + s * m[4])));
}

RCoefficients RCoefficients::at(cplx g, const Mu& mu, double K) {
  const auto x = AuxiliaryScalars::at(g, mu, K);
  const double m1 = mu.mu1, m3 = mu.mu3, s = std::norm(g), B = x.B;
  const double nA = std::norm(x.A), nA2 = std::norm(x.A + 2.0);
  RCoefficients r;
  r.R1 = x.A * x.A * m1 - (x.A + 2.0) * (x.A + 2.0) * m1 + 4.0 * g * g * m3;
  r.R2 = nA * m1 + nA2 * m1 + 4 * s * m3;
  r.R3 = 2 * std::pow(B, 4) * K + nA * nA * m1 * m1 + nA2 * nA2 * m1 * m1 +
         8 * s * (B - 2) * (B - 2) * m1 * m3 + 16 * s * s * m3 * m3 -
         2 * std::real(x.C * x.C * x.Ct * x.Ct) * m1 * m1;
  r.R4 = B * B * K + 4 * s * m1 * m3 + (B - 2) * (B - 2) * m1 * m1;
  return r;
}

CVec3 gauss_derivative(cplx g, cplx dg, cplx dgbar) {
  const cplx gb = std::conj(g);
  const double B = 1 + std::norm(g);
  const cplx dB = dg * gb + g * dgbar;
  const CVec3 num(g + gb, -I * (g - gb), g * gb - 1.0);
  const CVec3 dnum(dg + dgbar, -I * (dg - dgbar), dB);
  return dnum / B - num * (dB / (B * B));
}

namespace {

CMat3 cross_matrix(const Vec3& n) {
  CMat3 m;
  m << 0, -n[2], n[1], n[2], 0, -n[0], -n[1], n[0], 0;
  return m;
}

}  // namespace

E11Solution solve_e11_at(const ConnectionCoefficients& cc, const ConformalJet& j) {
  const Vec3 N = stereo_unproject(j.g);
  const CVec3 Nz = gauss_derivative(j.g, j.g_z, j.gbar_z());
  const cplx s = I / std::sqrt(j.K);
  // nabla_a N = (mu o a) x N, hence N x (nabla_a N) = P_N (mu o a).
  const Mat3 P = Mat3::Identity() - N * N.transpose();
  const CMat3 M = CMat3::Identity() - s * (P * cc.mu.vec().asDiagonal()).cast<cplx>();
  const CVec3 rhs = s * (cross_matrix(N) * Nz);
  E11Solution out;
  out.det = M.determinant();
  if (std::abs(out.det) < 1e-12) throw SingularSystem("singular frame system", 0);
  out.a = M.partialPivLu().solve(rhs);
  return out;
}

cplx e11_discriminant(const Mu& mu, cplx g, double K) {
  const auto x = AuxiliaryScalars::at(g, mu, K);
  const double m1 = mu.mu1, m2 = mu.mu2, m3 = mu.mu3, B = x.B, rK = std::sqrt(K);
  return (B * B * K - x.Ct * x.Ct * m2 * m3 + m1 * (-(B - 2) * (B - 2) * m2 + x.C * x.C * m3) -
          I * rK * (std::norm(x.A) * m1 + std::norm(x.A + 2.0) * m2 + 4 * std::norm(g) * m3)) /
         (B * B * K);
}

void require_mu12(const Mu& mu) {
  if (mu.mu1 != mu.mu2) throw MuMismatch("closed forms require mu1 == mu2");
}

CVec3 unimodular_closed_at(const Mu& mu, const ConformalJet& j) {
  require_mu12(mu);
  const auto x = AuxiliaryScalars::at(j.g, mu, j.K);
  const double m1 = mu.mu1, m2 = mu.mu2, m3 = mu.mu3, B = x.B, rK = std::sqrt(j.K);
  const cplx g = j.g, gb = std::conj(g), gz = j.g_z, gbz = j.gbar_z();
  const cplx den = B * e11_discriminant(mu, g, j.K) * (B * B * j.K);
  const cplx a1 = gbz * (x.A * B * rK - I * ((x.A + 2.0) * (B - 2) * m2 + 2.0 * g * x.C * m3)) -
                  gz * (x.Abar * B * rK - I * ((x.Abar + 2.0) * (B - 2) * m2 - 2.0 * gb * x.C * m3));
  const cplx a2 = gbz * (-x.A * (B - 2) * m1 - I * B * rK * (x.A + 2.0) - 2.0 * g * x.Ct * m3) -
                  gz * (x.Abar * (B - 2) * m1 + I * B * rK * (x.Abar + 2.0) + 2.0 * gb * x.Ct * m3);
  const cplx a3 = I * ((m1 - m2) * (g * (gz - g * g * gbz) - gb * (gbz - gb * gb * gz)) +
                       x.L * B * (g * gbz - gb * gz));
  return CVec3(a1, a2, a3) / den;
}

CVec3 s3_closed_at(const ConformalJet& j) {
  const cplx g = j.g, gb = std::conj(g), gz = j.g_z, gbz = j.gbar_z();
  const double B = 1 + std::norm(g);
  const cplx d = B * B * (std::sqrt(j.K) - I);
  return CVec3(((1.0 - gb * gb) * gz + (g * g - 1.0) * gbz) / d,
               -I * ((1.0 + gb * gb) * gz + (1.0 + g * g) * gbz) / d,
               2.0 * (gb * gz - g * gbz) / d);
}

namespace {

FundamentalForms finish(cplx E, double F, double K) {
  FundamentalForms f;
  f.E = E;
  f.F = F;
  f.D = std::norm(E) - F * F;
  f.II_coeff = 2 * std::sqrt(std::max(0.0, -K * f.D));
  return f;
}

}  // namespace

FundamentalForms forms_s3_at(const ConformalJet& j) {
  const double B = 1 + std::norm(j.g), rK = std::sqrt(j.K);
  const cplx E = -4.0 * j.g_z * j.gbar_z() / (B * B * (-I + rK) * (-I + rK));
  const double F = 2 * (std::norm(j.g_z) + std::norm(j.g_zbar)) / (B * B * (1 + j.K));
  return finish(E, F, j.K);
}

double s3_printed_ii(const ConformalJet& j) {
  const double B = 1 + std::norm(j.g);
  return 2 * std::sqrt(j.K) * positive_margin(j) / (B * B * (1 + j.K));
}

FundamentalForms forms_mu12_at(const Mu& mu, const ConformalJet& j) {
  require_mu12(mu);
  const auto r = RCoefficients::at(j.g, mu, j.K);
  const double m1 = mu.mu1, m3 = mu.mu3, s = std::norm(j.g), B = 1 + s, rK = std::sqrt(j.K);
  const cplx gz = j.g_z, gzb = j.g_zbar, gbz = j.gbar_z(), gbzb = std::conj(gz);
  const cplx Q = B * (B * B * j.K - 4 * s * m1 * m3 - (B - 2) * (B - 2) * m1 * m1 - I * rK * r.R2);
  const cplx w = 2.0 * I * B * B * rK + r.R2;
  const cplx E = (gbz * r.R1 + gz * w) * (gz * std::conj(r.R1) + gbz * w) / (Q * Q);
  const cplx Fc = (gbzb * (gbz * r.R1 * r.R2 + gz * r.R3) + gzb * (gz * r.R2 * std::conj(r.R1) + gbz * r.R3)) /
                  std::norm(Q);
  FundamentalForms f = finish(E, Fc.real(), j.K);
  const cplx t = r.R4 * (std::norm(gz) - std::norm(gbz)) +
                 I * rK * (gz * gzb * std::conj(r.R1) - gbz * gbzb * r.R1);
  f.D = (-4 * std::pow(B, 4) * t * t / (std::norm(Q) * std::norm(Q))).real();
  f.II_coeff = 2 * std::sqrt(std::max(0.0, -j.K * f.D));
  return f;
}

FundamentalForms forms_from_frame(const CVec3& a, double K) {
  return finish(a.transpose() * a, a.squaredNorm(), K);
}

ConformalData ConformalData::from(const ComplexField& g, const RealField& K) {
  if (g.domain.kind != GridKind::ConformalZ) throw KindMismatch("positive branch needs a conformal-z grid");
  ConformalData d;
  d.g = g;
  d.K = K;
  d.g_z = differentiate(g, DiffOp::d_z);
  d.g_zbar = differentiate(g, DiffOp::d_zbar);
  d.g_zzbar = differentiate(d.g_z, DiffOp::d_zbar);
  d.K_z = differentiate(K, DiffOp::d_z);
  return d;
}

namespace {

void require_positive(const RealField& K) {
  for (std::size_t k = 0; k < K.size(); ++k)
    if (!(K[k] > 0)) throw DomainError("positive branch requires K > 0 at node " + std::to_string(k));
}

template <class F>
FrameCoefficients frame_map(const ComplexField& g, const RealField& K, F&& f) {
  require_positive(K);
  const ConformalData d = ConformalData::from(g, K);
  FrameCoefficients out(g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!d.valid(k)) {
      out.valid[k] = 0;
      continue;
    }
    out.put(k, f(d.jet(k), k));
  }
  return out;
}

}  // namespace

FrameCoefficients solve_linear_e11(const ConnectionCoefficients& cc, const ComplexField& g,
                                   const RealField& K) {
  return frame_map(g, K, [&](const ConformalJet& j, std::size_t k) {
    try {
      return solve_e11_at(cc, j).a;
    } catch (const SingularSystem&) {
      throw SingularSystem("singular frame system", k);
    }
  });
}

FrameCoefficients coeffs_unimodular_closed(const Mu& mu, const ComplexField& g, const RealField& K) {
  require_mu12(mu);
  return frame_map(g, K, [&](const ConformalJet& j, std::size_t) { return unimodular_closed_at(mu, j); });
}

FrameCoefficients coeffs_s3(const ComplexField& g, const RealField& K) {
  return frame_map(g, K, [](const ConformalJet& j, std::size_t) { return s3_closed_at(j); });
}

Field<FundamentalForms> forms_s3(const ComplexField& g, const RealField& K) {
  require_positive(K);
  const ConformalData d = ConformalData::from(g, K);
  Field<FundamentalForms> out(g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = forms_s3_at(d.jet(k));
  return out;
}

Field<FundamentalForms> forms_mu12(const Mu& mu, const ComplexField& g, const RealField& K) {
  require_mu12(mu);
  require_positive(K);
  const ConformalData d = ConformalData::from(g, K);
  Field<FundamentalForms> out(g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) out[k] = forms_mu12_at(mu, d.jet(k));
  return out;
}

RealField admissible_positive(const ComplexField& g) {
  const ComplexField gz = differentiate(g, DiffOp::d_z);
  const ComplexField gzb = differentiate(g, DiffOp::d_zbar);
  RealField m(g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) m[k] = std::norm(gzb[k]) - std::norm(gz[k]);
  return m;
}

namespace {

/// RHS of the log-gradient equation; the derivative combination that
/// vanishes exactly when g is harmonic.
cplx log_gradient_rhs(const ConformalData& d, std::size_t k) {
  const cplx g = d.g[k], gb = std::conj(g), gz = d.g_z[k], gzb = d.g_zbar[k];
  const cplx gbz = std::conj(gzb), gbzb = std::conj(gz), gzzb = d.g_zzbar[k];
  const double B = 1 + std::norm(g);
  const double margin = std::norm(gzb) - std::norm(gz);
  return 2.0 / margin * (gbz * gzzb - gz * std::conj(gzzb) + 2.0 * gz * gbz * (g * gbzb - gb * gzb) / B);
}

bool admissible_node(const ConformalData& d, std::size_t k) {
  return d.valid(k) && std::norm(d.g_zbar[k]) - std::norm(d.g_z[k]) > kAdmissibleMargin;
}

}  // namespace

S3IntegrabilityReport integrability_residual_s3(const ComplexField& g, const RealField& K) {
  require_positive(K);
  const ConformalData d = ConformalData::from(g, K);
  const ComplexField logq = map(K, [](double k) {
    const double r = std::sqrt(k);
    return std::log(cplx(1 - k, -2 * r) / r);
  });
  const ComplexField lhs = differentiate(logq, DiffOp::d_z);
  // The identity is pure chain rule; 4th-order stencils keep it well below
  // the 2nd-order error of the log-gradient residual.
  const ComplexField lhs4 = differentiate(logq, DiffOp::d_z, 4);
  const ComplexField Kz4 = differentiate(K, DiffOp::d_z, 4);
  S3IntegrabilityReport out{ResidualReport("log_gradient", g.domain), ResidualReport("log_identity", g.domain)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r = std::sqrt(K[k]);
    const cplx factor = (-I + r) / (K[k] * (I + r));
    out.identity.set(k, std::abs(2.0 * lhs4[k] - factor * Kz4[k]));
    if (admissible_node(d, k)) out.log_gradient.set(k, std::abs(lhs[k] - log_gradient_rhs(d, k)));
  }
  out.log_gradient.finalize();
  out.identity.finalize();
  return out;
}

ResidualReport pde_residual_t1(const Mu& mu, const ComplexField& g, const RealField& K) {
  require_mu12(mu);
  require_positive(K);
  const ConformalData d = ConformalData::from(g, K);
  ResidualReport rep("g_equation", g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!admissible_node(d, k)) continue;
    const double x = K[k];
    const GTable G = pde_coefficients(x, std::sqrt(x), g[k], mu.mu1, mu.mu3);
    const cplx gz = d.g_z[k], gzb = d.g_zbar[k];
    const cplx rhs = pde_rhs(G, gz, gzb, std::conj(gzb), std::conj(gz), d.K_z[k], std::conj(d.K_z[k]));
    rep.set(k, std::abs(d.g_zzbar[k] - rhs));
  }
  rep.finalize();
  return rep;
}

ResidualReport harmonic_residual(const ComplexField& g) {
  const ComplexField gz = differentiate(g, DiffOp::d_z);
  const ComplexField gzb = differentiate(g, DiffOp::d_zbar);
  const ComplexField gzzb = differentiate(gz, DiffOp::d_zbar);
  ResidualReport rep("harmonic", g.domain);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!node_valid(g[k])) continue;
    const double B = 1 + std::norm(g[k]);
    rep.set(k, std::abs(gzzb[k] - 2.0 * gz[k] * gzb[k] * std::conj(g[k]) / B));
  }
  rep.finalize();
  return rep;
}

cplx parallel_defect(cplx g, const Vec3& w) {
  return (std::norm(g) - 1) * cplx(w[0], w[1]) - 2.0 * g * w[2];
}

CommutatorResidual commutator_residual(const ConnectionCoefficients& cc, const ComplexField& g,
                                       const RealField& K, const FrameCoefficients& frame) {
  require_positive(K);
  const GridDomain& dom = g.domain;
  const UnitVectorField N = gauss_sphere_field(g);
  const Field<CVec3> Nc = map(N, [](const Vec3& v) { return CVec3(v.cast<cplx>()); });
  const Field<CVec3> Nx = axis_derivative(Nc, 0), Ny = axis_derivative(Nc, 1);
  // W = (1/sqrt K) nabla_{phi_zbar} N, left-translated.
  Field<CVec3> W(dom, CVec3::Zero());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const CVec3 Nzb = 0.5 * (Nx[k] + I * Ny[k]);
    const CVec3 ab = frame.at(k).conjugate();
    W[k] = (Nzb + cc.nabla(ab, Nc[k])) / std::sqrt(K[k]);
  }
  const Field<CVec3> Wx = axis_derivative(W, 0), Wy = axis_derivative(W, 1);
  CommutatorResidual out{Field<CVec3>(dom, CVec3::Zero()), ComplexField(dom),
                         ResidualReport("commutator_parallel", dom)};
  for (std::size_t k = 0; k < g.size(); ++k) {
    const CVec3 Wz = 0.5 * (Wx[k] - I * Wy[k]);
    out.V[k] = Wz + cc.nabla(frame.at(k), W[k]);
    out.parallel_defect[k] = parallel_defect(g[k], out.V[k].real());
    if (frame.valid[k] && node_valid(g[k])) out.report.set(k, std::abs(out.parallel_defect[k]));
  }
  out.report.finalize();
  return out;
}

}  // namespace liesurf
