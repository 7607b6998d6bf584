#pragma once

#include "liesurf/types.hpp"

#include <array>
#include <string>
#include <string_view>

namespace liesurf {

/// Bracket coefficients: [E2,E3]=c1 E1, [E3,E1]=c2 E2, [E1,E2]=c3 E3.
struct StructureConstants {
  double c1 = 0, c2 = 0, c3 = 0;
};

struct Mu {
  double mu1 = 0, mu2 = 0, mu3 = 0;

  Vec3 vec() const { return {mu1, mu2, mu3}; }
  bool operator==(const Mu&) const = default;
};

/// Levi-Civita data of a left-invariant orthonormal frame.
/// gamma[i][j][k] is the E_k component of nabla_{E_i} E_j.
struct ConnectionCoefficients {
  Mu mu;
  std::array<std::array<std::array<double, 3>, 3>, 3> gamma{};

  /// sum_{i,j} x_i y_j Gamma_ij^k, i.e. nabla_x y for left-invariant x, y.
  CVec3 nabla(const CVec3& x, const CVec3& y) const;
};

enum class GroupKind { R3, S3, Berger, PSL2, Nil3, Sol3 };

struct GroupPreset {
  GroupKind kind = GroupKind::S3;
  double tau = 1.0;

  GroupPreset() = default;
  GroupPreset(GroupKind k, double t = 1.0);

  Mu mu() const;
  std::string name() const;
  static GroupPreset parse(std::string_view name, double tau = 1.0);
};

Mu mu_from_c(const StructureConstants& c);
StructureConstants c_from_mu(const Mu& mu);

ConnectionCoefficients christoffel(const Mu& mu);

Vec3 algebra_cross(const Vec3& w, const Vec3& v);
CVec3 algebra_cross(const CVec3& w, const CVec3& v);

/// Bilinear extension of the bracket; equals diag(c)(w x v).
Vec3 algebra_bracket(const StructureConstants& c, const Vec3& w, const Vec3& v);

}  // namespace liesurf
