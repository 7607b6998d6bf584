#include "liesurf/su2.hpp"

#include "liesurf/scenarios.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <algorithm>

namespace liesurf {

Mat2c Quat::matrix() const {
  Mat2c m;
  m << z, w, -std::conj(w), std::conj(z);
  return m;
}

Quat Quat::inverse() const {
  const double n2 = std::norm(z) + std::norm(w);
  return {std::conj(z) / n2, -w / n2};
}

std::array<Mat2c, 3> su2_basis() {
  return {Quat::algebra({1, 0, 0}).matrix(), Quat::algebra({0, 1, 0}).matrix(),
          Quat::algebra({0, 0, 1}).matrix()};
}

Quat exp_su2(const Vec3& v) {
  // (w1 E1 + w2 E2 + w3 E3)^2 = -|w|^2 Id
  const double th = v.norm();
  const double sinc = th < 1e-8 ? 1 - th * th / 6 : std::sin(th) / th;
  const Quat a = Quat::algebra(v);
  return {std::cos(th) + a.z * sinc, a.w * sinc};
}

double geodesic_distance(const Quat& a, const Quat& b) {
  const Vec4 x = a.r4(), y = b.r4();
  return std::atan2((x - y).norm() * (x + y).norm(), x.dot(y) * 2.0) ;
}

TangentField tangents(const FrameCoefficients& f) {
  const GridDomain& d = f.domain();
  TangentField t{d, std::vector<Vec3>(d.size()), std::vector<Vec3>(d.size())};
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!f.valid[k]) throw DomainError("frame invalid at node " + std::to_string(k));
    const CVec3 a = f.at(k);
    t.w1[k] = 2 * a.real();
    t.w2[k] = -2 * a.imag();
  }
  return t;
}

TangentField tangents(const NullFrameCoefficients& f) {
  const GridDomain& d = f.domain();
  TangentField t{d, std::vector<Vec3>(d.size()), std::vector<Vec3>(d.size())};
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!f.valid[k]) throw DomainError("frame invalid at node " + std::to_string(k));
    t.w1[k] = f.a(k).real();
    t.w2[k] = f.A(k).real();
  }
  return t;
}

namespace {

/// Shared sweep; `advance(from, to, tangent, h)` returns the value at `to`.
template <class Step>
void sweep(const GridDomain& d, std::vector<Vec4>& pts, Step&& advance) {
  for (std::size_t i = 1; i < d.n1; ++i) pts[d.index(i, 0)] = advance(d.index(i - 1, 0), d.index(i, 0), 0, d.h1);
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 1; j < d.n2; ++j)
      pts[d.index(i, j)] = advance(d.index(i, j - 1), d.index(i, j), 1, d.h2);
}

const Vec3& dir(const TangentField& t, int axis, std::size_t k) { return axis == 0 ? t.w1[k] : t.w2[k]; }

}  // namespace

SurfaceSample integrate_frame(const TangentField& t, const Quat& start) {
  const GridDomain& d = t.domain;
  SurfaceSample s{d, true, std::vector<Vec4>(d.size()), 0.0};
  s.points[0] = start.normalized().r4();
  sweep(d, s.points, [&](std::size_t from, std::size_t to, int axis, double h) {
    const Vec3 mid = 0.5 * (dir(t, axis, from) + dir(t, axis, to));
    const Quat q = Quat::from_r4(s.points[from]) * exp_su2(h * mid);
    s.max_raw_drift = std::max(s.max_raw_drift, std::abs(q.norm() - 1));
    return q.normalized().r4();
  });
  return s;
}

SurfaceSample integrate_frame(const FrameCoefficients& f, const Quat& start) {
  return integrate_frame(tangents(f), start);
}

SurfaceSample integrate_frame(const NullFrameCoefficients& f, const Quat& start) {
  return integrate_frame(tangents(f), start);
}

SurfaceSample r3_integrate(const TangentField& t, const Vec3& start) {
  const GridDomain& d = t.domain;
  SurfaceSample s{d, false, std::vector<Vec4>(d.size(), Vec4::Zero()), 0.0};
  s.points[0].head<3>() = start;
  sweep(d, s.points, [&](std::size_t from, std::size_t to, int axis, double h) {
    Vec4 p = s.points[from];
    p.head<3>() += 0.5 * h * (dir(t, axis, from) + dir(t, axis, to));
    return p;
  });
  return s;
}

double loop_closure_defect(const TangentField& t, std::size_t i, std::size_t j, Target target) {
  const GridDomain& d = t.domain;
  const std::size_t a = d.index(i, j), b = d.index(i + 1, j), c = d.index(i + 1, j + 1), e = d.index(i, j + 1);
  const Vec3 s1 = 0.5 * d.h1 * (t.w1[a] + t.w1[b]);
  const Vec3 s2 = 0.5 * d.h2 * (t.w2[b] + t.w2[c]);
  const Vec3 s3 = -0.5 * d.h1 * (t.w1[c] + t.w1[e]);
  const Vec3 s4 = -0.5 * d.h2 * (t.w2[e] + t.w2[a]);
  if (target == Target::R3) return (s1 + s2 + s3 + s4).norm();
  const Quat hol = exp_su2(s1) * exp_su2(s2) * exp_su2(s3) * exp_su2(s4);
  return geodesic_distance(hol.normalized(), Quat::identity());
}

double max_loop_closure_defect(const TangentField& t, Target target, std::size_t margin) {
  const GridDomain& d = t.domain;
  double m = 0;
  for (std::size_t i = margin; i + 1 + margin < d.n1; ++i)
    for (std::size_t j = margin; j + 1 + margin < d.n2; ++j)
      m = std::max(m, loop_closure_defect(t, i, j, target));
  return m;
}

namespace {

template <class T>
Field<T> second_derivative(const Field<T>& f, int axis, int order) {
  const GridDomain& d = f.domain;
  const std::size_t n = axis == 0 ? d.n1 : d.n2;
  const double h = axis == 0 ? d.h1 : d.h2;
  Field<T> out(d, detail::zero_like(f.values[0]));
  const std::size_t lines = axis == 0 ? d.n2 : d.n1;
  auto val = [&](std::size_t l, std::size_t p) -> const T& { return axis == 0 ? f.at(p, l) : f.at(l, p); };
  auto put = [&](std::size_t l, std::size_t p) -> T& { return axis == 0 ? out.at(p, l) : out.at(l, p); };
  for (std::size_t l = 0; l < lines; ++l)
    for (std::size_t p = 0; p < n; ++p) {
      if (order >= 4 && p >= 2 && p + 2 < n)
        put(l, p) = (-val(l, p - 2) + 16.0 * val(l, p - 1) - 30.0 * val(l, p) + 16.0 * val(l, p + 1) -
                     val(l, p + 2)) / (12.0 * h * h);
      else if (p > 0 && p + 1 < n)
        put(l, p) = (val(l, p - 1) - 2.0 * val(l, p) + val(l, p + 1)) / (h * h);
      else if (p == 0)
        put(l, p) = (2.0 * val(l, 0) - 5.0 * val(l, 1) + 4.0 * val(l, 2) - val(l, 3)) / (h * h);
      else
        put(l, p) = (2.0 * val(l, p) - 5.0 * val(l, p - 1) + 4.0 * val(l, p - 2) - val(l, p - 3)) / (h * h);
    }
  return out;
}

/// Unit vector orthogonal to p, a, b in R^4 (cofactor expansion).
Vec4 normal4(const Vec4& p, const Vec4& a, const Vec4& b) {
  Eigen::Matrix<double, 3, 4> m;
  m.row(0) = p;
  m.row(1) = a;
  m.row(2) = b;
  Vec4 n;
  for (int c = 0; c < 4; ++c) {
    Eigen::Matrix3d minor;
    int col = 0;
    for (int k = 0; k < 4; ++k) {
      if (k == c) continue;
      minor.col(col++) = m.col(k);
    }
    n[c] = ((c % 2) ? -1.0 : 1.0) * minor.determinant();
  }
  return n;
}

}  // namespace

double OracleResult::max_deviation(const std::function<double(std::size_t)>& K_ref) const {
  double m = 0;
  for (std::size_t k = 0; k < forms.size(); ++k)
    if (valid[k]) m = std::max(m, std::abs(forms[k].K_ext - K_ref(k)));
  return m;
}

OracleResult embed_oracle_forms(const SurfaceSample& s, int order, std::size_t margin) {
  const GridDomain& d = s.domain;
  Field<Vec4> P(d, Vec4::Zero());
  P.values = s.points;
  const Field<Vec4> Px = axis_derivative(P, 0, order), Py = axis_derivative(P, 1, order);
  const Field<Vec4> Pxx = second_derivative(P, 0, order), Pyy = second_derivative(P, 1, order);
  const Field<Vec4> Pxy = axis_derivative(Px, 1, order);
  OracleResult out{Field<OracleForms>(d), std::vector<std::uint8_t>(d.size(), 0)};
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!d.interior(k, margin)) continue;
    OracleForms f;
    const Vec4 &x = Px[k], &y = Py[k];
    f.E = x.dot(x);
    f.F = x.dot(y);
    f.G = y.dot(y);
    Vec4 n;
    if (s.in_s3) {
      n = normal4(P[k], x, y);
    } else {
      n = Vec4::Zero();
      n.head<3>() = Vec3(x.head<3>()).cross(Vec3(y.head<3>()));
    }
    const double scale = std::sqrt(f.E * f.G);
    if (!(n.norm() > 1e-10 * scale) || scale == 0)
      throw DegenerateTangents("tangent vectors are dependent at node " + std::to_string(k));
    n.normalize();
    f.L = Pxx[k].dot(n);
    f.M = Pxy[k].dot(n);
    f.N = Pyy[k].dot(n);
    f.K_ext = (f.L * f.N - f.M * f.M) / (f.E * f.G - f.F * f.F);
    out.forms[k] = f;
    out.valid[k] = 1;
  }
  return out;
}

namespace {

std::vector<std::array<std::size_t, 4>> grid_quads(const GridDomain& d, const std::vector<std::uint8_t>& bad) {
  std::vector<std::array<std::size_t, 4>> q;
  for (std::size_t i = 0; i + 1 < d.n1; ++i)
    for (std::size_t j = 0; j + 1 < d.n2; ++j) {
      const std::array<std::size_t, 4> f{d.index(i, j), d.index(i + 1, j), d.index(i + 1, j + 1), d.index(i, j + 1)};
      if (bad[f[0]] || bad[f[1]] || bad[f[2]] || bad[f[3]]) continue;
      q.push_back(f);
    }
  return q;
}

}  // namespace

R3Mesh stereo_s3_to_r3(const SurfaceSample& s, int pole) {
  if (!s.in_s3) throw InvalidArgument("stereographic export needs an S3 sample");
  if (pole < 0 || pole > 3) throw InvalidArgument("pole axis must be 0..3");
  R3Mesh m{s.domain, std::vector<Vec3>(s.points.size(), Vec3::Zero()),
           std::vector<std::uint8_t>(s.points.size(), 0), {}};
  for (std::size_t k = 0; k < s.points.size(); ++k) {
    const Vec4& x = s.points[k];
    const double den = 1 - x[pole];
    if (std::abs(den) < 1e-6) {
      m.pole_flag[k] = 1;
      continue;
    }
    int c = 0;
    for (int a = 0; a < 4; ++a)
      if (a != pole) m.vertices[k][c++] = x[a] / den;
  }
  m.quads = grid_quads(s.domain, m.pole_flag);
  return m;
}

R3Mesh mesh_from_r3(const SurfaceSample& s) {
  R3Mesh m{s.domain, std::vector<Vec3>(s.points.size()), std::vector<std::uint8_t>(s.points.size(), 0), {}};
  for (std::size_t k = 0; k < s.points.size(); ++k) m.vertices[k] = s.points[k].head<3>();
  m.quads = grid_quads(s.domain, m.pole_flag);
  return m;
}

double left_translation_deviation(const SurfaceSample& a, const SurfaceSample& b) {
  const Quat L = b.quat(0) * a.quat(0).inverse();
  double m = 0;
  for (std::size_t k = 0; k < a.points.size(); ++k) m = std::max(m, ((L * a.quat(k)).r4() - b.points[k]).norm());
  return m;
}

double rigid_deviation(const std::vector<Vec3>& a, const std::vector<Vec3>& b, bool allow_reflection) {
  const std::size_t n = a.size();
  Vec3 ca = Vec3::Zero(), cb = Vec3::Zero();
  for (std::size_t k = 0; k < n; ++k) {
    ca += a[k];
    cb += b[k];
  }
  ca /= static_cast<double>(n);
  cb /= static_cast<double>(n);
  Mat3 H = Mat3::Zero();
  for (std::size_t k = 0; k < n; ++k) H += (a[k] - ca) * (b[k] - cb).transpose();
  Eigen::JacobiSVD<Mat3> svd(H, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 R = svd.matrixV() * svd.matrixU().transpose();
  if (!allow_reflection && R.determinant() < 0) {
    Mat3 V = svd.matrixV();
    V.col(2) *= -1;
    R = V * svd.matrixU().transpose();
  }
  double m = 0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, (R * (a[k] - ca) + cb - b[k]).norm());
  return m;
}

namespace {

/// Algebra vectors psi^{-1} psi_s and psi^{-1} psi_t at (s, t) = (s, 0).
std::pair<Vec3, Vec3> revolution_frame(double K, double s) {
  const double u = -s, v = s;
  const auto jet = scenarios::pseudosphere_jet(u, v);
  const NullPair p = negative_closed_at({1, 1, 1}, {jet.g, jet.g_u, jet.g_v, K});
  const Vec3 a = p.a.real(), A = p.A.real();
  return {A - a, A + a};
}

Quat rk4_step(double K, const Quat& q, double s, double h) {
  auto f = [&](const Quat& x, double ss) { return x * Quat::algebra(revolution_frame(K, ss).first); };
  const Quat k1 = f(q, s);
  const Quat k2 = f(q + k1 * (h / 2), s + h / 2);
  const Quat k3 = f(q + k2 * (h / 2), s + h / 2);
  const Quat k4 = f(q + k3 * h, s + h);
  return q + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6);
}

}  // namespace

RevolutionResult revolution_ode(double K, double s_min, double s_max, double step, double t_max,
                                double t_step) {
  if (!(K < 0) || std::abs(K + 1) < 1e-10) throw DomainError("revolution surface needs K < 0, K != -1");
  if (!(step > 0) || !(s_max > s_min) || s_min < 0) throw InvalidArgument("bad s-range or step");
  if (t_step <= 0) t_step = step;
  RevolutionResult r;
  r.K = K;
  r.step = step;
  const auto n = static_cast<std::size_t>(std::llround(s_max / step));
  const auto first = static_cast<std::size_t>(std::llround(s_min / step));
  if (n - first + 1 < 5) throw InvalidArgument("s-range too short for the step");
  Quat q;
  std::vector<Quat> all{q};
  for (std::size_t k = 0; k < n; ++k) {
    q = rk4_step(K, q, static_cast<double>(k) * step, step);
    const double drift = std::abs(q.norm() - 1);
    r.profile.max_raw_drift = std::max(r.profile.max_raw_drift, drift);
    if (drift > 1e-8) throw StepRejected("norm drift " + std::to_string(drift) + " exceeds 1e-8; reduce the step");
    q = q.normalized();
    all.push_back(q);
  }
  auto& P = r.profile;
  for (std::size_t k = first; k <= n; ++k) {
    const Vec4 x = all[k].r4();
    const double beta = std::acos(std::clamp(x[3], -1.0, 1.0));
    P.s.push_back(static_cast<double>(k) * step);
    P.alpha.push_back(std::atan2(std::hypot(x[0], x[1]), x[2]));
    P.beta.push_back(beta);
    P.gamma.push_back(std::atan2(x[1], x[0]));
    P.psi0.push_back(all[k]);
  }
  r.X = revolution_frame(K, 0).second - r.kappa * Vec3(0, 0, 1);
  const auto nt = static_cast<std::size_t>(std::llround(t_max / t_step)) + 1;
  const GridDomain d(P.s.front(), 0.0, step, t_step, P.s.size(), std::max<std::size_t>(nt, 5),
                     GridKind::Parametric);
  r.surface = SurfaceSample{d, true, std::vector<Vec4>(d.size()), P.max_raw_drift};
  for (std::size_t j = 0; j < d.n2; ++j) {
    const double t = d.y(j);
    const Quat L = exp_su2(t * r.X), R = exp_su2(r.kappa * t * Vec3(0, 0, 1));
    for (std::size_t i = 0; i < d.n1; ++i) r.surface.points[d.index(i, j)] = (L * P.psi0[i] * R).r4();
  }
  return r;
}

Quat profile_at(const RevolutionResult& r, double s) {
  const auto& P = r.profile;
  if (s < P.s.front() - 1e-12 || s > P.s.back() + 1e-12) throw DomainError("s outside the computed profile");
  auto k = static_cast<std::size_t>(std::floor((s - P.s.front()) / r.step + 1e-9));
  k = std::min(k, P.s.size() - 1);
  const double rest = s - P.s[k];
  if (std::abs(rest) < 1e-14) return P.psi0[k];
  return rk4_step(r.K, P.psi0[k], P.s[k], rest).normalized();
}

Quat revolution_point(const RevolutionResult& r, double s, double t) {
  return exp_su2(t * r.X) * profile_at(r, s) * exp_su2(r.kappa * t * Vec3(0, 0, 1));
}

}  // namespace liesurf
