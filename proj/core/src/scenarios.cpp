#include "liesurf/scenarios.hpp"

#include <cmath>
#include <numbers>

namespace liesurf::scenarios {

PseudosphereJet pseudosphere_jet(double u, double v) {
  const double t = (u + v) / 2, s = (v - u) / 2;
  const double T = std::tanh(s / 2), dT = (1 - T * T) / 2;
  const cplx e = std::polar(1.0, t);
  return {-e * T, -e * (I * T / 2.0 - dT / 2), -e * (I * T / 2.0 + dT / 2), e * T * (1 - dT) / 4.0};
}

cplx pseudosphere_g_radical(double u, double v) {
  const double eu = std::exp(u), ev = std::exp(v);
  const double sq = std::sqrt(std::exp(u + v) * (eu - ev) * (eu - ev));
  return std::exp(cplx(-1, 1) * ((u + v) / 2)) * (eu - ev) * sq / (ev * ev - eu * eu + 2 * sq);
}

Vec3 pseudosphere_N_radical(double u, double v) {
  const double eu = std::exp(u), ev = std::exp(v);
  const double sq = std::sqrt(std::exp(u + v) * (eu - ev) * (eu - ev));
  const double t = (u + v) / 2, sech = 1 / std::cosh((v - u) / 2), e = std::exp(-(u + v)) / 2;
  return sq * Vec3(-e * std::cos(t) * sech, -e * std::sin(t) * sech, 2 / (eu * eu - ev * ev));
}

Vec3 pseudosphere_psi(double u, double v) {
  const double t = (u + v) / 2, s = (v - u) / 2;
  return {std::cos(t) / std::cosh(s), std::sin(t) / std::cosh(s), s - std::tanh(s)};
}

NullPair pseudosphere_k2_frame(double u, double v) {
  const double eu = std::exp(u), ev = std::exp(v), t = (u + v) / 2, e = std::exp(t);
  const double r2 = std::numbers::sqrt2, c = std::cos(t), s = std::sin(t);
  const double den = (eu + ev) * (eu + ev), th2 = std::pow(std::tanh((u - v) / 2), 2);
  NullPair p;
  p.a = CVec3((1 + r2) * e * ((eu - ev) * c + (eu + ev) * s) / den,
              -(1 + r2) * e * ((eu + ev) * c - (eu - ev) * s) / den, (1 + r2) / 2 * th2);
  p.A = CVec3((r2 - 1) * e * ((ev - eu) * c + (eu + ev) * s) / den,
              -(r2 - 1) * e * ((eu + ev) * c + (eu - ev) * s) / den, -(r2 - 1) / 2 * th2);
  return p;
}

PseudosphereScenario scenario_pseudosphere(const GridDomain& d) {
  if (d.kind != GridKind::NullUV) throw KindMismatch("pseudosphere datum lives on a null (u, v) grid");
  if (d.x1() >= d.y0) throw DomainError("grid touches the line u = v");
  PseudosphereScenario sc;
  const auto jet = sample(d, [](double u, double v) { return pseudosphere_jet(u, v); });
  sc.g = map(jet, [](const PseudosphereJet& j) { return j.g; });
  sc.g_u = map(jet, [](const PseudosphereJet& j) { return j.g_u; });
  sc.g_v = map(jet, [](const PseudosphereJet& j) { return j.g_v; });
  sc.g_uv = map(jet, [](const PseudosphereJet& j) { return j.g_uv; });
  sc.K_star = RealField(d, -1.0);
  sc.N = sample(d, pseudosphere_N_radical);
  sc.psi = SurfaceSample{d, false, std::vector<Vec4>(d.size(), Vec4::Zero()), 0.0};
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 0; j < d.n2; ++j) sc.psi.points[d.index(i, j)].head<3>() = pseudosphere_psi(d.x(i), d.y(j));
  return sc;
}

GridDomain pseudosphere_domain(double h) { return GridDomain::covering(-2, -0.2, 0.2, 2, h, GridKind::NullUV); }

ComplexField gzbar(const GridDomain& d) {
  if (d.kind != GridKind::ConformalZ) throw KindMismatch("g = conj(z) lives on a conformal grid");
  return sample(d, [](double x, double y) { return cplx(x, -y); });
}

GridDomain gzbar_domain(double h) { return GridDomain::covering(-0.5, 0.5, -0.5, 0.5, h, GridKind::ConformalZ); }

namespace {

SurfaceSample sphere_sample(double r, double h) {
  const GridDomain d = GridDomain::covering(0.4, std::numbers::pi - 0.4, 0, 2, h, GridKind::Parametric);
  SurfaceSample s{d, true, std::vector<Vec4>(d.size()), 0.0};
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 0; j < d.n2; ++j) {
      const double th = d.x(i), ph = d.y(j);
      s.points[d.index(i, j)] = Vec4(std::cos(r), std::sin(r) * std::sin(th) * std::cos(ph),
                                     std::sin(r) * std::sin(th) * std::sin(ph), std::sin(r) * std::cos(th));
    }
  return s;
}

}  // namespace

SurfaceSample distance_sphere(double r, double h) {
  if (!(r > 0 && r < std::numbers::pi)) throw InvalidArgument("radius must lie in (0, pi)");
  return sphere_sample(r, h);
}

SurfaceSample great_sphere(double h) { return sphere_sample(std::numbers::pi / 2, h); }

}  // namespace liesurf::scenarios
