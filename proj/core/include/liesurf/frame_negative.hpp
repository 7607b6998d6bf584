#pragma once

#include "liesurf/fields.hpp"
#include "liesurf/lie_structure.hpp"
#include "liesurf/residual.hpp"

#include <vector>

namespace liesurf {

/// Local data at one node of a null-uv grid.
struct NullJet {
  cplx g, g_u, g_v;
  double K = -2;
};

struct NullPair {
  CVec3 a;  ///< components of phi^{-1} phi_u
  CVec3 A;  ///< components of phi^{-1} phi_v
};

struct N22Solution {
  NullPair frame;
  double det_u = 0, det_v = 0;
};

/// Generic solve of both null systems; the v-system carries the opposite
/// sign of 1/sqrt(-K). Throws SingularSystem (node 0).
N22Solution solve_n22_at(const ConnectionCoefficients& cc, const NullJet& j);
/// Closed forms for mu1 = mu2. Throws ForbiddenCurvature (node 0).
NullPair negative_closed_at(const Mu& mu, const NullJet& j);

double forbidden_curvature_mu(const Mu& mu);
double forbidden_curvature_g(const Mu& mu, cplx g);
/// Throws ForbiddenCurvature if K is within 1e-10 of either excluded value.
void check_forbidden(const Mu& mu, cplx g, double K, std::size_t node = 0);

inline double negative_margin(const NullJet& j) { return -2 * std::imag(j.g_u * std::conj(j.g_v)); }

struct NullFundamentalForms {
  double Euu = 0, Fuv = 0, Gvv = 0;
  double D = 0;  ///< Euu Gvv - Fuv^2
  double f = 0;  ///< sqrt(-K D)
  double K_recovered() const { return -f * f / D; }
};

NullFundamentalForms forms_s3_negative_at(const NullJet& j);
NullFundamentalForms null_forms_from_frame(const NullPair& p, double K);

struct NullData {
  ComplexField g, g_u, g_v, g_uv;
  RealField K, K_u, K_v;

  static NullData from(const ComplexField& g, const RealField& K);
  /// Uses supplied first and mixed derivatives instead of finite differences for g.
  static NullData from_exact(const ComplexField& g, const ComplexField& g_u, const ComplexField& g_v,
                             const ComplexField& g_uv, const RealField& K);
  NullJet jet(std::size_t k) const { return {g[k], g_u[k], g_v[k], K[k]}; }
  bool valid(std::size_t k) const { return node_valid(g[k]) && K[k] < 0; }
};

struct NullFrameCoefficients {
  ComplexField a1, a2, a3, A1, A2, A3;
  std::vector<std::uint8_t> valid;

  NullFrameCoefficients() = default;
  explicit NullFrameCoefficients(const GridDomain& d)
      : a1(d), a2(d), a3(d), A1(d), A2(d), A3(d), valid(d.size(), 1) {}
  const GridDomain& domain() const { return a1.domain; }
  CVec3 a(std::size_t k) const { return {a1[k], a2[k], a3[k]}; }
  CVec3 A(std::size_t k) const { return {A1[k], A2[k], A3[k]}; }
  void put(std::size_t k, const NullPair& p);
};

NullFrameCoefficients solve_linear_n22(const ConnectionCoefficients& cc, const ComplexField& g,
                                       const RealField& K);
NullFrameCoefficients solve_linear_n22(const ConnectionCoefficients& cc, const NullData& d);
NullFrameCoefficients coeffs_negative_closed(const Mu& mu, const ComplexField& g, const RealField& K);
NullFrameCoefficients coeffs_negative_closed(const Mu& mu, const NullData& d);
RealField admissible_negative(const ComplexField& g);
Field<NullFundamentalForms> forms_s3_negative(const ComplexField& g, const RealField& K);

struct NegIntegrabilityReport {
  ResidualReport line_u;
  ResidualReport line_v;
  double max() const { return std::max(line_u.summary.max, line_v.summary.max); }
};

/// Nodes count when |margin| > 1e-10; the sign of the margin only fixes
/// the orientation of the normal.
NegIntegrabilityReport integrability_residual_neg(const ComplexField& g, const RealField& K);
ResidualReport lorentz_harmonic_residual(const ComplexField& g);
/// Uses sqrt(K) := i sqrt(-K) in the G-table.
ResidualReport pde_residual_t3(const Mu& mu, const ComplexField& g, const RealField& K);
/// |A_u - a_v + nabla_a A - nabla_A a|, the left-translated bracket [phi_u, phi_v].
ResidualReport null_commutator_residual(const ConnectionCoefficients& cc, const NullFrameCoefficients& f);

}  // namespace liesurf
