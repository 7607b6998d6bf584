#pragma once

#include "liesurf/fields.hpp"
#include "liesurf/frame_negative.hpp"
#include "liesurf/su2.hpp"

namespace liesurf::scenarios {

/// Gauss map of the pseudosphere and its exact derivatives. On u < v,
/// g = -exp(i t) tanh(s/2) with t = (u+v)/2, s = (v-u)/2.
struct PseudosphereJet {
  cplx g, g_u, g_v, g_uv;
};

PseudosphereJet pseudosphere_jet(double u, double v);
/// The radical closed forms as written for g and N (valid for u < v).
cplx pseudosphere_g_radical(double u, double v);
Vec3 pseudosphere_N_radical(double u, double v);
/// Tractrix parametrization in proper null coordinates.
Vec3 pseudosphere_psi(double u, double v);
/// Frame coefficients of the K = -2 surface written out explicitly in (u, v).
NullPair pseudosphere_k2_frame(double u, double v);

struct PseudosphereScenario {
  ComplexField g, g_u, g_v, g_uv;  ///< derivatives exact, not finite differences
  RealField K_star;                ///< -1
  UnitVectorField N;               ///< radical closed form
  SurfaceSample psi;               ///< R^3 sample

  NullData data(const RealField& K) const { return NullData::from_exact(g, g_u, g_v, g_uv, K); }
};

inline constexpr double kStripMin = 0.1;  ///< minimum (v-u)/2 of the default domain

/// Throws DomainError if any node has u >= v.
PseudosphereScenario scenario_pseudosphere(const GridDomain& d);
GridDomain pseudosphere_domain(double h);

/// g = conj(z) on a conformal grid.
ComplexField gzbar(const GridDomain& d);
GridDomain gzbar_domain(double h);

/// Sphere of geodesic radius r about the identity, parametrized by polar
/// angle in [0.4, pi-0.4] and azimuth in [0, 2].
SurfaceSample distance_sphere(double r, double h);
SurfaceSample great_sphere(double h);

}  // namespace liesurf::scenarios
