#pragma once

#include "liesurf/fields.hpp"
#include "liesurf/frame_negative.hpp"
#include "liesurf/frame_positive.hpp"

#include <Eigen/Core>

#include <array>
#include <functional>
#include <vector>

namespace liesurf {

using Mat2c = Eigen::Matrix2cd;

/// Element of the quaternion algebra written as the SU(2)-shaped matrix
/// [[z, w], [-conj w, conj z]]. Components follow (z, w) = (q0 + i q3, q2 + i q1);
/// the R^4 embedding is (Re z, Im z, Re w, Im w).
struct Quat {
  cplx z{1, 0}, w{0, 0};

  static Quat identity() { return {}; }
  static Quat from_components(double q0, double q1, double q2, double q3) { return {{q0, q3}, {q2, q1}}; }
  static Quat from_r4(const Vec4& x) { return {{x[0], x[1]}, {x[2], x[3]}}; }
  /// w1 E1 + w2 E2 + w3 E3.
  static Quat algebra(const Vec3& v) { return {{0, v[2]}, {v[0], v[1]}}; }

  std::array<double, 4> components() const { return {z.real(), w.imag(), w.real(), z.imag()}; }
  Vec4 r4() const { return {z.real(), z.imag(), w.real(), w.imag()}; }
  Mat2c matrix() const;

  Quat operator*(const Quat& o) const { return {z * o.z - w * std::conj(o.w), z * o.w + w * std::conj(o.z)}; }
  Quat operator+(const Quat& o) const { return {z + o.z, w + o.w}; }
  Quat operator*(double s) const { return {z * s, w * s}; }
  Quat inverse() const;  ///< exact for unit elements (conjugate)
  double norm() const { return std::sqrt(std::norm(z) + std::norm(w)); }
  Quat normalized() const { return *this * (1.0 / norm()); }
};

std::array<Mat2c, 3> su2_basis();
Quat exp_su2(const Vec3& w);
/// Angle in R^4 between two unit elements (geodesic distance on the unit sphere).
double geodesic_distance(const Quat& a, const Quat& b);

/// Group-valued samples on a grid. S^3 samples hold unit R^4 points; R^3
/// samples hold (x, y, z, 0).
struct SurfaceSample {
  GridDomain domain;
  bool in_s3 = true;
  std::vector<Vec4> points;
  double max_raw_drift = 0;  ///< largest | |psi| - 1 | before renormalization

  Vec3 r3(std::size_t k) const { return points[k].head<3>(); }
  Quat quat(std::size_t k) const { return Quat::from_r4(points[k]); }
};

/// Real algebra vectors attached to the two grid directions.
struct TangentField {
  GridDomain domain;
  std::vector<Vec3> w1, w2;
};

/// phi_x = 2 Re(a), phi_y = -2 Im(a) on conformal grids.
TangentField tangents(const FrameCoefficients& f);
/// phi_u = Re(a), phi_v = Re(A) on null grids.
TangentField tangents(const NullFrameCoefficients& f);

/// Exponential-midpoint sweep: first along axis 0 at j = 0, then along
/// axis 1 for each i. `start` fixes the left-translation gauge.
SurfaceSample integrate_frame(const TangentField& t, const Quat& start);
SurfaceSample integrate_frame(const FrameCoefficients& f, const Quat& start);
SurfaceSample integrate_frame(const NullFrameCoefficients& f, const Quat& start);
/// Additive analogue in R^3 (trapezoidal along the same sweep).
SurfaceSample r3_integrate(const TangentField& t, const Vec3& start);

enum class Target { S3, R3 };

/// Holonomy defect of the cell with lower corner (i, j).
double loop_closure_defect(const TangentField& t, std::size_t i, std::size_t j, Target target);
/// Max over all cells (optionally only cells at least `margin` cells from the boundary).
double max_loop_closure_defect(const TangentField& t, Target target, std::size_t margin = 0);

struct OracleForms {
  double E = 0, F = 0, G = 0;  ///< first fundamental form
  double L = 0, M = 0, N = 0;  ///< second fundamental form against the unit normal
  double K_ext = 0;
};

struct OracleResult {
  Field<OracleForms> forms;
  std::vector<std::uint8_t> valid;  ///< nodes at least `margin` away from the boundary
  /// Max |K_ext - K_ref(node)| over valid nodes.
  double max_deviation(const std::function<double(std::size_t)>& K_ref) const;
};

/// Finite-difference fundamental forms of an S^3 (or R^3) sample, independent
/// of every closed-form expression. order = 2 or 4.
OracleResult embed_oracle_forms(const SurfaceSample& s, int order = 2, std::size_t margin = 2);

struct R3Mesh {
  GridDomain domain;
  std::vector<Vec3> vertices;
  std::vector<std::uint8_t> pole_flag;
  std::vector<std::array<std::size_t, 4>> quads;
};

/// (x_a, x_b, x_c) / (1 - x_pole), pole = index of the projection axis (default 3).
R3Mesh stereo_s3_to_r3(const SurfaceSample& s, int pole = 3);
R3Mesh mesh_from_r3(const SurfaceSample& s);

/// Largest distance after the best left translation mapping a(0) to b(0).
double left_translation_deviation(const SurfaceSample& a, const SurfaceSample& b);
/// Largest distance after the best rigid motion (optionally with reflection).
double rigid_deviation(const std::vector<Vec3>& a, const std::vector<Vec3>& b, bool allow_reflection);

struct RevolutionProfile {
  std::vector<double> s, alpha, beta, gamma;
  std::vector<Quat> psi0;
  double max_raw_drift = 0;
};

struct RevolutionResult {
  RevolutionProfile profile;
  SurfaceSample surface;  ///< parametric grid over (s, t)
  Vec3 X;                 ///< generator of the t-action on the left
  double kappa = -0.5;    ///< generator of the t-action on the right, in units of E3
  double K = -2;
  double step = 1e-3;
};

/// Revolution surface with Gauss map of the pseudosphere and constant K < 0:
/// psi(s, t) = exp(t X) psi0(s) exp(kappa t E3), psi0' = psi0 * b(s, 0), psi0(0) = 1.
/// RK4 with the given step on [0, s_max]; profile and surface reported on
/// [s_min, s_max] x [0, t_max].
RevolutionResult revolution_ode(double K, double s_min, double s_max, double step, double t_max = 0.3,
                                double t_step = 0);
/// psi0(s) by RK4 from the closest stored node.
Quat profile_at(const RevolutionResult& r, double s);
Quat revolution_point(const RevolutionResult& r, double s, double t);

}  // namespace liesurf
