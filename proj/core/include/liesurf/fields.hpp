#pragma once

#include "liesurf/errors.hpp"
#include "liesurf/types.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace liesurf {

/// Parametric grids carry plain real axes (e.g. sampled surfaces) and
/// admit only axis derivatives.
enum class GridKind { ConformalZ, NullUV, Parametric };

/// Rectangular node grid. Node (i, j) sits at (x0 + i*h1, y0 + j*h2);
/// storage is row-major with i as the row index.
struct GridDomain {
  double x0 = 0, y0 = 0;
  double h1 = 0.1, h2 = 0.1;
  std::size_t n1 = 5, n2 = 5;
  GridKind kind = GridKind::ConformalZ;

  GridDomain() = default;
  GridDomain(double x0, double y0, double h1, double h2, std::size_t n1, std::size_t n2,
             GridKind kind);

  /// Grid covering [xa,xb] x [ya,yb] with steps as close to h as the extents allow.
  static GridDomain covering(double xa, double xb, double ya, double yb, double h, GridKind kind);

  std::size_t size() const { return n1 * n2; }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n2 + j; }
  std::pair<std::size_t, std::size_t> ij(std::size_t idx) const { return {idx / n2, idx % n2}; }
  double x(std::size_t i) const { return x0 + static_cast<double>(i) * h1; }
  double y(std::size_t j) const { return y0 + static_cast<double>(j) * h2; }
  double x1() const { return x(n1 - 1); }
  double y1() const { return y(n2 - 1); }
  bool interior(std::size_t idx, std::size_t margin = 1) const;

  /// Same rectangle, half the step.
  GridDomain refined() const;
  bool same_as(const GridDomain& o) const;
};

std::string to_string(GridKind k);
GridKind grid_kind_from_string(const std::string& s);

template <class T>
struct Field {
  GridDomain domain;
  std::vector<T> values;

  Field() = default;
  explicit Field(const GridDomain& d, const T& fill = T{}) : domain(d), values(d.size(), fill) {}

  std::size_t size() const { return values.size(); }
  T& operator[](std::size_t k) { return values[k]; }
  const T& operator[](std::size_t k) const { return values[k]; }
  T& at(std::size_t i, std::size_t j) { return values[domain.index(i, j)]; }
  const T& at(std::size_t i, std::size_t j) const { return values[domain.index(i, j)]; }
};

using ComplexField = Field<cplx>;
using RealField = Field<double>;
using UnitVectorField = Field<Vec3>;

/// Samples f(x, y) at every node.
template <class F>
auto sample(const GridDomain& d, F&& f) {
  using T = std::decay_t<decltype(f(0.0, 0.0))>;
  Field<T> out(d);
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 0; j < d.n2; ++j) out.at(i, j) = f(d.x(i), d.y(j));
  return out;
}

template <class T, class F>
auto map(const Field<T>& in, F&& f) {
  using U = std::decay_t<decltype(f(in.values[0]))>;
  Field<U> out(in.domain);
  for (std::size_t k = 0; k < in.size(); ++k) out.values[k] = f(in.values[k]);
  return out;
}

namespace detail {
template <class T>
T zero_like(const T& v) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, cplx>) {
    return T{};
  } else {
    return T::Zero(v.rows(), v.cols());
  }
}
}  // namespace detail

/// Partial derivative along axis 0 or 1. order=2: central interior,
/// one-sided 3-point at the ends. order=4: 5-point interior, 2nd order
/// fallbacks within two nodes of the boundary.
template <class T>
Field<T> axis_derivative(const Field<T>& f, int axis, int order = 2) {
  const GridDomain& d = f.domain;
  const std::size_t n = axis == 0 ? d.n1 : d.n2;
  const double h = axis == 0 ? d.h1 : d.h2;
  Field<T> out(d, detail::zero_like(f.values[0]));
  auto val = [&](std::size_t line, std::size_t p) -> const T& {
    return axis == 0 ? f.at(p, line) : f.at(line, p);
  };
  auto put = [&](std::size_t line, std::size_t p) -> T& {
    return axis == 0 ? out.at(p, line) : out.at(line, p);
  };
  const std::size_t lines = axis == 0 ? d.n2 : d.n1;
  for (std::size_t l = 0; l < lines; ++l) {
    for (std::size_t p = 0; p < n; ++p) {
      if (order >= 4 && p >= 2 && p + 2 < n) {
        put(l, p) = (val(l, p - 2) - 8.0 * val(l, p - 1) + 8.0 * val(l, p + 1) - val(l, p + 2)) /
                    (12.0 * h);
      } else if (p > 0 && p + 1 < n) {
        put(l, p) = (val(l, p + 1) - val(l, p - 1)) / (2.0 * h);
      } else if (p == 0) {
        put(l, p) = (-3.0 * val(l, 0) + 4.0 * val(l, 1) - val(l, 2)) / (2.0 * h);
      } else {
        put(l, p) = (3.0 * val(l, p) - 4.0 * val(l, p - 1) + val(l, p - 2)) / (2.0 * h);
      }
    }
  }
  return out;
}

enum class DiffOp { d_z, d_zbar, d_u, d_v };

/// Wirtinger derivatives on conformal grids, axis derivatives on null grids.
/// order = 2 or 4 as in axis_derivative.
ComplexField differentiate(const ComplexField& f, DiffOp op, int order = 2);
ComplexField differentiate(const RealField& f, DiffOp op, int order = 2);

ComplexField to_complex(const RealField& f);
ComplexField conj(const ComplexField& f);

cplx stereo_project(const Vec3& n);
Vec3 stereo_unproject(cplx g);
UnitVectorField gauss_sphere_field(const ComplexField& g);
ComplexField stereo_project(const UnitVectorField& n);

/// |g| above this bound is treated as the pole of the chart.
inline constexpr double kPoleBound = 1e8;
inline bool node_valid(cplx g) {
  return std::isfinite(g.real()) && std::isfinite(g.imag()) && std::abs(g) <= kPoleBound;
}

void write_csv(const ComplexField& f, const std::string& path);
void write_csv(const RealField& f, const std::string& path);
ComplexField read_complex_csv(const std::string& path, const GridDomain& d);
RealField read_real_csv(const std::string& path, const GridDomain& d);

/// Grid metadata sidecar (JSON object with origin/step/size/kind).
void write_grid_sidecar(const GridDomain& d, const std::string& path);
GridDomain read_grid_sidecar(const std::string& path);

}  // namespace liesurf
