#pragma once

#include "liesurf/fields.hpp"
#include "liesurf/lie_structure.hpp"
#include "liesurf/residual.hpp"

#include <array>
#include <vector>

namespace liesurf {

/// Local data at one node of a conformal grid. gbar_z = conj(g_zbar).
struct ConformalJet {
  cplx g, g_z, g_zbar;
  double K = 1;
  cplx gbar_z() const { return std::conj(g_zbar); }
};

/// Abbreviations shared by the closed-form expressions.
struct AuxiliaryScalars {
  cplx A, Abar;  // g^2 - 1 and its conjugate
  double B = 1;  // 1 + |g|^2
  cplx C, Ct;    // g - gbar (imaginary), g + gbar (real)
  cplx L;        // 2i sqrt(K) + mu1 + mu2

  static AuxiliaryScalars at(cplx g, const Mu& mu, double K);
};

/// P_{(m0..m4)} = sum m_i |g|^{2i}.
double poly_P(const std::array<double, 5>& m, double s);

/// Coefficients R1..R4 of the mu1 = mu2 first fundamental form.
struct RCoefficients {
  cplx R1;
  double R2 = 0, R3 = 0, R4 = 0;
  static RCoefficients at(cplx g, const Mu& mu, double K);
};

/// Derivative of N = stereo_unproject(g) given dg and d(gbar) along one direction.
CVec3 gauss_derivative(cplx g, cplx dg, cplx dgbar);

struct E11Solution {
  CVec3 a;
  cplx det;
};

/// Generic solve of a = (i/sqrt K) N x (N_z + nabla_a N). Throws SingularSystem
/// (node 0) if |det| < 1e-12.
E11Solution solve_e11_at(const ConnectionCoefficients& cc, const ConformalJet& j);
/// Printed closed-form discriminant of the same system.
cplx e11_discriminant(const Mu& mu, cplx g, double K);
CVec3 unimodular_closed_at(const Mu& mu, const ConformalJet& j);
CVec3 s3_closed_at(const ConformalJet& j);

struct FundamentalForms {
  cplx E;
  double F = 0;
  double D = 0;
  double II_coeff = 0;  ///< 2 rho, where K = -rho^2 / D

  double rho() const { return II_coeff / 2; }
  double K_recovered() const { return -rho() * rho() / D; }
};

FundamentalForms forms_s3_at(const ConformalJet& j);
FundamentalForms forms_mu12_at(const Mu& mu, const ConformalJet& j);
FundamentalForms forms_from_frame(const CVec3& a, double K);
/// The II line as printed for S^3 (equals rho, half of II_coeff).
double s3_printed_ii(const ConformalJet& j);
inline double positive_margin(const ConformalJet& j) { return std::norm(j.g_zbar) - std::norm(j.g_z); }

/// g, K and the finite-difference derivatives needed downstream.
struct ConformalData {
  ComplexField g, g_z, g_zbar, g_zzbar;
  RealField K;
  ComplexField K_z;

  static ConformalData from(const ComplexField& g, const RealField& K);
  ConformalJet jet(std::size_t k) const { return {g[k], g_z[k], g_zbar[k], K[k]}; }
  bool valid(std::size_t k) const { return node_valid(g[k]) && K[k] > 0; }
};

struct FrameCoefficients {
  ComplexField a1, a2, a3;
  std::vector<std::uint8_t> valid;

  FrameCoefficients() = default;
  explicit FrameCoefficients(const GridDomain& d) : a1(d), a2(d), a3(d), valid(d.size(), 1) {}
  const GridDomain& domain() const { return a1.domain; }
  CVec3 at(std::size_t k) const { return {a1[k], a2[k], a3[k]}; }
  void put(std::size_t k, const CVec3& a) { a1[k] = a[0]; a2[k] = a[1]; a3[k] = a[2]; }
};

FrameCoefficients solve_linear_e11(const ConnectionCoefficients& cc, const ComplexField& g,
                                   const RealField& K);
FrameCoefficients coeffs_unimodular_closed(const Mu& mu, const ComplexField& g, const RealField& K);
FrameCoefficients coeffs_s3(const ComplexField& g, const RealField& K);
Field<FundamentalForms> forms_s3(const ComplexField& g, const RealField& K);
Field<FundamentalForms> forms_mu12(const Mu& mu, const ComplexField& g, const RealField& K);
RealField admissible_positive(const ComplexField& g);

struct S3IntegrabilityReport {
  ResidualReport log_gradient;       ///< |LHS - RHS| of the log-gradient equation
  ResidualReport identity;  ///< |2 (log ...)_z - (-i+sqrtK)/(K(i+sqrtK)) K_z|
};

inline constexpr double kAdmissibleMargin = 1e-10;

S3IntegrabilityReport integrability_residual_s3(const ComplexField& g, const RealField& K);
ResidualReport pde_residual_t1(const Mu& mu, const ComplexField& g, const RealField& K);
ResidualReport harmonic_residual(const ComplexField& g);

struct CommutatorResidual {
  Field<CVec3> V;
  ComplexField parallel_defect;
  ResidualReport report;  ///< |parallel_defect|
};

CommutatorResidual commutator_residual(const ConnectionCoefficients& cc, const ComplexField& g,
                                       const RealField& K, const FrameCoefficients& frame);

/// (|g|^2 - 1)(w1 + i w2) - 2 g w3; zero iff the real vector w is parallel to N.
cplx parallel_defect(cplx g, const Vec3& w);

void require_mu12(const Mu& mu);

}  // namespace liesurf
