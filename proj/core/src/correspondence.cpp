#include "liesurf/correspondence.hpp"

#include <boost/math/tools/roots.hpp>

#include <cstdint>
#include <functional>

namespace liesurf {

namespace {

void require_sign(const RealField& K, int sign) {
  for (std::size_t k = 0; k < K.size(); ++k)
    if (!(sign * K[k] > 0))
      throw DomainError(std::string("curvature must be ") + (sign > 0 ? "positive" : "negative") +
                        " at node " + std::to_string(k));
}

ResidualReport report_abs(const std::string& name, const ComplexField& f,
                          const std::vector<std::uint8_t>* mask = nullptr) {
  ResidualReport rep(name, f.domain);
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!mask || (*mask)[k]) rep.set(k, std::abs(f[k]));
  rep.finalize();
  return rep;
}

double phi_positive(double K) { return std::log((1 + K) * (1 + K) / K); }
double phi_u(double K) {
  const double r = std::sqrt(-K);
  return std::log(std::pow(1 + r, 4) / -K);
}
double phi_v(double K) {
  const double r = std::sqrt(-K);
  return std::log(std::pow(r - 1, 4) / -K);
}

/// Potential values along two sweep orders from per-edge increments.
struct Sweep {
  RealField row_first, col_first;
};

Sweep sweep(const GridDomain& d, const std::function<double(std::size_t, std::size_t)>& du,
            const std::function<double(std::size_t, std::size_t)>& dv) {
  // du(i, j): increment from (i-1, j) to (i, j); dv(i, j): from (i, j-1) to (i, j).
  Sweep s{RealField(d, 0.0), RealField(d, 0.0)};
  for (std::size_t i = 1; i < d.n1; ++i) s.row_first.at(i, 0) = s.row_first.at(i - 1, 0) + du(i, 0);
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 1; j < d.n2; ++j) s.row_first.at(i, j) = s.row_first.at(i, j - 1) + dv(i, j);
  for (std::size_t j = 1; j < d.n2; ++j) s.col_first.at(0, j) = s.col_first.at(0, j - 1) + dv(0, j);
  for (std::size_t j = 0; j < d.n2; ++j)
    for (std::size_t i = 1; i < d.n1; ++i) s.col_first.at(i, j) = s.col_first.at(i - 1, j) + du(i, j);
  return s;
}

double max_gap(const Sweep& s) {
  double m = 0;
  for (std::size_t k = 0; k < s.row_first.size(); ++k)
    m = std::max(m, std::abs(s.row_first[k] - s.col_first[k]));
  return m;
}

}  // namespace

ResidualReport condition_positive(const RealField& K) {
  require_sign(K, 1);
  const ComplexField Kz = differentiate(K, DiffOp::d_z);
  ComplexField f(K.domain);
  for (std::size_t k = 0; k < K.size(); ++k) f[k] = Kz[k] / (2 * std::sqrt(K[k]) * (1 + K[k]));
  return report_abs("positive_condition", differentiate(f, DiffOp::d_zbar));
}

ResidualReport condition_positive_R(const RealField& K) {
  require_sign(K, 1);
  const RealField R = map(K, [](double k) { return std::sqrt(k); });
  const ComplexField Rz = differentiate(R, DiffOp::d_z);
  ComplexField f(K.domain);
  for (std::size_t k = 0; k < K.size(); ++k) f[k] = Rz[k] / (1 + R[k] * R[k]);
  return report_abs("positive_condition_R", differentiate(f, DiffOp::d_zbar));
}

ResidualReport condition_negative(const RealField& K) {
  require_sign(K, -1);
  if (K.domain.kind != GridKind::NullUV) throw KindMismatch("negative condition needs a null-uv grid");
  const RealField Ku = axis_derivative(K, 0);
  ComplexField f(K.domain);
  std::vector<std::uint8_t> mask(K.size(), 1);
  for (std::size_t k = 0; k < K.size(); ++k) {
    if (std::abs(K[k] + 1) < 1e-10) {
      mask[k] = 0;
      continue;
    }
    f[k] = -4 * Ku[k] / (std::sqrt(-K[k]) * (1 + K[k]));
  }
  return report_abs("negative_condition", differentiate(f, DiffOp::d_v), &mask);
}

CorrespondenceResult transfer_positive(const RealField& K, std::optional<double> base) {
  if (!base) throw GaugeUnderdetermined("K* is fixed only up to a constant factor; supply a base value");
  if (!(*base > 0)) throw InvalidArgument("positive branch needs a positive base value");
  require_sign(K, 1);
  const GridDomain& d = K.domain;
  const Sweep s = sweep(
      d, [&](std::size_t i, std::size_t j) { return phi_positive(K.at(i, j)) - phi_positive(K.at(i - 1, j)); },
      [&](std::size_t i, std::size_t j) { return phi_positive(K.at(i, j)) - phi_positive(K.at(i, j - 1)); });
  CorrespondenceResult out;
  out.base_point_value = *base;
  out.path_dependence = max_gap(s);
  out.K_target = map(s.row_first, [&](double l) { return *base * std::exp(l); });
  out.condition_residual = condition_positive(K);
  return out;
}

RealField inverse_transfer_positive(const RealField& K_star, double base_K) {
  require_sign(K_star, 1);
  if (!(base_K > 0)) throw InvalidArgument("base curvature must be positive");
  const double c0 = phi_positive(base_K);
  const double ks0 = K_star[0];
  return map(K_star, [&](double ks) {
    const double c = std::exp(c0) * ks / ks0;  // (1+K)^2/K
    const double disc = (c - 2) * (c - 2) - 4;
    if (disc < -1e-12) throw DomainError("no positive curvature realizes this K*");
    const double root = std::sqrt(std::max(0.0, disc));
    const double hi = ((c - 2) + root) / 2, lo = ((c - 2) - root) / 2;
    return base_K >= 1 ? hi : lo;
  });
}

CorrespondenceResult transfer_negative(const RealField& K, std::optional<double> base, double line_tol) {
  if (!base) throw GaugeUnderdetermined("K* is fixed only up to a constant factor; supply a base value");
  if (!(*base < 0)) throw InvalidArgument("negative branch needs a negative base value");
  require_sign(K, -1);
  if (K.domain.kind != GridKind::NullUV) throw KindMismatch("negative transfer needs a null-uv grid");
  for (std::size_t k = 0; k < K.size(); ++k)
    if (std::abs(K[k] + 1) < 1e-10) throw DomainError("K = -1 is excluded");
  const Sweep s = sweep(
      K.domain, [&](std::size_t i, std::size_t j) { return phi_u(K.at(i, j)) - phi_u(K.at(i - 1, j)); },
      [&](std::size_t i, std::size_t j) { return phi_v(K.at(i, j)) - phi_v(K.at(i, j - 1)); });
  CorrespondenceResult out;
  out.base_point_value = *base;
  out.path_dependence = max_gap(s);
  out.condition_residual = condition_negative(K);
  if (out.path_dependence > line_tol)
    throw InconsistentLines("u-line and v-line integrations disagree by " +
                            std::to_string(out.path_dependence));
  out.K_target = map(s.row_first, [&](double l) { return *base * std::exp(l); });
  return out;
}

RealField inverse_transfer_negative(const RealField& K_star, double base_K) {
  require_sign(K_star, -1);
  if (!(base_K < 0) || std::abs(base_K + 1) < 1e-10) throw InvalidArgument("base curvature must be negative and not -1");
  const GridDomain& d = K_star.domain;
  const bool outer = base_K < -1;  // r > 1 branch
  // Invert phi on the branch containing the base value, in terms of log r.
  auto invert = [&](double (*phi)(double), double target) {
    auto f = [&](double lr) { return phi(-std::exp(2 * lr)) - target; };
    double a = outer ? 1e-12 : -40.0, b = outer ? 40.0 : -1e-12;
    if (f(a) * f(b) > 0) throw DomainError("no negative curvature realizes this K*");
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t it = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, tol, it);
    const double lr = (lo + hi) / 2;
    return -std::exp(2 * lr);
  };
  RealField K(d, base_K);
  // Column j = 0 along u, then each row along v (matches the forward sweep order).
  for (std::size_t i = 1; i < d.n1; ++i)
    K.at(i, 0) = invert(phi_u, phi_u(K.at(i - 1, 0)) + std::log(-K_star.at(i, 0)) - std::log(-K_star.at(i - 1, 0)));
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 1; j < d.n2; ++j)
      K.at(i, j) = invert(phi_v, phi_v(K.at(i, j - 1)) + std::log(-K_star.at(i, j)) - std::log(-K_star.at(i, j - 1)));
  return K;
}

}  // namespace liesurf
