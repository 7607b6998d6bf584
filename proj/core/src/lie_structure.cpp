#include "liesurf/lie_structure.hpp"

#include "liesurf/errors.hpp"

#include <algorithm>
#include <cctype>

namespace liesurf {

CVec3 ConnectionCoefficients::nabla(const CVec3& x, const CVec3& y) const {
  CVec3 out = CVec3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (gamma[i][j][k] != 0.0) out[k] += x[i] * y[j] * gamma[i][j][k];
  return out;
}

GroupPreset::GroupPreset(GroupKind k, double t) : kind(k), tau(t) {
  const bool needs_tau = k == GroupKind::Berger || k == GroupKind::PSL2 || k == GroupKind::Nil3;
  if (needs_tau && !(tau > 0.0))
    throw InvalidArgument("group preset " + name() + " requires tau > 0");
}

Mu GroupPreset::mu() const {
  switch (kind) {
    case GroupKind::R3: return {0, 0, 0};
    case GroupKind::S3: return {1, 1, 1};
    case GroupKind::Berger: return {tau, tau, (1 - 2 * tau * tau) / (2 * tau)};
    case GroupKind::PSL2: return {-tau, -tau, (1 + 2 * tau * tau) / (2 * tau)};
    case GroupKind::Nil3: return {tau, tau, -tau};
    case GroupKind::Sol3: return {-1, 1, 0};
  }
  return {};
}

std::string GroupPreset::name() const {
  switch (kind) {
    case GroupKind::R3: return "r3";
    case GroupKind::S3: return "s3";
    case GroupKind::Berger: return "berger";
    case GroupKind::PSL2: return "psl2";
    case GroupKind::Nil3: return "nil3";
    case GroupKind::Sol3: return "sol3";
  }
  return "?";
}

GroupPreset GroupPreset::parse(std::string_view name, double tau) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  if (s == "r3") return {GroupKind::R3, tau};
  if (s == "s3") return {GroupKind::S3, tau};
  if (s == "berger") return {GroupKind::Berger, tau};
  if (s == "psl2") return {GroupKind::PSL2, tau};
  if (s == "nil3") return {GroupKind::Nil3, tau};
  if (s == "sol3") return {GroupKind::Sol3, tau};
  throw InvalidArgument("unknown group '" + s + "'");
}

Mu mu_from_c(const StructureConstants& c) {
  return {(-c.c1 + c.c2 + c.c3) / 2, (c.c1 - c.c2 + c.c3) / 2, (c.c1 + c.c2 - c.c3) / 2};
}

StructureConstants c_from_mu(const Mu& m) {
  return {m.mu2 + m.mu3, m.mu1 + m.mu3, m.mu1 + m.mu2};
}

ConnectionCoefficients christoffel(const Mu& mu) {
  ConnectionCoefficients cc;
  cc.mu = mu;
  const double m[3] = {mu.mu1, mu.mu2, mu.mu3};
  // Gamma_ij^k = mu_i * eps_ijk
  const int perm[6][4] = {{0, 1, 2, 1}, {1, 2, 0, 1}, {2, 0, 1, 1},
                          {1, 0, 2, -1}, {2, 1, 0, -1}, {0, 2, 1, -1}};
  for (const auto& p : perm) cc.gamma[p[0]][p[1]][p[2]] = m[p[0]] * p[3];
  return cc;
}

Vec3 algebra_cross(const Vec3& w, const Vec3& v) { return w.cross(v); }
// Eigen's cross conjugates complex operands; the algebra product is bilinear.
CVec3 algebra_cross(const CVec3& w, const CVec3& v) {
  return {w[1] * v[2] - w[2] * v[1], w[2] * v[0] - w[0] * v[2], w[0] * v[1] - w[1] * v[0]};
}

Vec3 algebra_bracket(const StructureConstants& c, const Vec3& w, const Vec3& v) {
  const Vec3 x = w.cross(v);
  return {c.c1 * x[0], c.c2 * x[1], c.c3 * x[2]};
}

}  // namespace liesurf
