#include "liesurf/fields.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace liesurf {

GridDomain::GridDomain(double x0_, double y0_, double h1_, double h2_, std::size_t n1_,
                       std::size_t n2_, GridKind kind_)
    : x0(x0_), y0(y0_), h1(h1_), h2(h2_), n1(n1_), n2(n2_), kind(kind_) {
  if (!(h1 > 0) || !(h2 > 0)) throw InvalidArgument("grid steps must be positive");
  if (n1 < 5 || n2 < 5) throw InvalidArgument("grid needs at least 5 nodes per axis");
}

GridDomain GridDomain::covering(double xa, double xb, double ya, double yb, double h,
                                GridKind kind) {
  if (!(xb > xa) || !(yb > ya) || !(h > 0)) throw InvalidArgument("bad grid extents");
  const auto n1 = static_cast<std::size_t>(std::llround((xb - xa) / h)) + 1;
  const auto n2 = static_cast<std::size_t>(std::llround((yb - ya) / h)) + 1;
  return GridDomain(xa, ya, (xb - xa) / static_cast<double>(n1 - 1),
                    (yb - ya) / static_cast<double>(n2 - 1), n1, n2, kind);
}

bool GridDomain::interior(std::size_t idx, std::size_t margin) const {
  const auto [i, j] = ij(idx);
  return i >= margin && j >= margin && i + margin < n1 && j + margin < n2;
}

GridDomain GridDomain::refined() const {
  return GridDomain(x0, y0, h1 / 2, h2 / 2, 2 * n1 - 1, 2 * n2 - 1, kind);
}

bool GridDomain::same_as(const GridDomain& o) const {
  return n1 == o.n1 && n2 == o.n2 && kind == o.kind && x0 == o.x0 && y0 == o.y0 &&
         h1 == o.h1 && h2 == o.h2;
}

std::string to_string(GridKind k) {
  switch (k) {
    case GridKind::ConformalZ: return "conformal-z";
    case GridKind::NullUV: return "null-uv";
    case GridKind::Parametric: return "parametric";
  }
  return "?";
}

GridKind grid_kind_from_string(const std::string& s) {
  if (s == "conformal-z") return GridKind::ConformalZ;
  if (s == "null-uv") return GridKind::NullUV;
  if (s == "parametric") return GridKind::Parametric;
  throw InvalidArgument("unknown grid kind '" + s + "'");
}

ComplexField differentiate(const ComplexField& f, DiffOp op, int order) {
  const bool z_op = op == DiffOp::d_z || op == DiffOp::d_zbar;
  const GridKind want = z_op ? GridKind::ConformalZ : GridKind::NullUV;
  if (f.domain.kind != want)
    throw KindMismatch("differential operator does not match grid kind " + to_string(f.domain.kind));
  switch (op) {
    case DiffOp::d_u: return axis_derivative(f, 0, order);
    case DiffOp::d_v: return axis_derivative(f, 1, order);
    default: break;
  }
  const ComplexField fx = axis_derivative(f, 0, order);
  const ComplexField fy = axis_derivative(f, 1, order);
  const double s = op == DiffOp::d_z ? -1.0 : 1.0;
  ComplexField out(f.domain);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = 0.5 * (fx[k] + s * I * fy[k]);
  return out;
}

ComplexField differentiate(const RealField& f, DiffOp op, int order) {
  return differentiate(to_complex(f), op, order);
}

ComplexField to_complex(const RealField& f) {
  return map(f, [](double v) { return cplx(v, 0.0); });
}

ComplexField conj(const ComplexField& f) {
  return map(f, [](cplx v) { return std::conj(v); });
}

cplx stereo_project(const Vec3& n) {
  const double den = 1.0 - n[2];
  if (std::abs(den) < 1e-12) throw PoleError("north pole has no stereographic image");
  return {n[0] / den, n[1] / den};
}

Vec3 stereo_unproject(cplx g) {
  const double r2 = std::norm(g);
  const double b = 1.0 + r2;
  return {2.0 * g.real() / b, 2.0 * g.imag() / b, (r2 - 1.0) / b};
}

UnitVectorField gauss_sphere_field(const ComplexField& g) {
  return map(g, [](cplx v) { return stereo_unproject(v); });
}

ComplexField stereo_project(const UnitVectorField& n) {
  return map(n, [](const Vec3& v) { return stereo_project(v); });
}

namespace {

void open_out(std::ofstream& os, const std::string& path) {
  os.open(path);
  if (!os) throw Error("cannot write " + path);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Row>
void read_rows(const std::string& path, const GridDomain& d, std::size_t ncols, Row&& row) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read " + path);
  std::string line;
  std::getline(is, line);  // header
  std::size_t k = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> cols;
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
    if (cols.size() != ncols) throw Error(path + ": wrong column count");
    if (k >= d.size()) throw Error(path + ": more rows than grid nodes");
    const auto [i, j] = d.ij(k);
    const double tol = 1e-9 * (1.0 + std::abs(d.x(i)) + std::abs(d.y(j)));
    if (std::abs(cols[0] - d.x(i)) > tol || std::abs(cols[1] - d.y(j)) > tol)
      throw Error(path + ": node coordinates do not match grid");
    row(k, cols);
    ++k;
  }
  if (k != d.size()) throw Error(path + ": fewer rows than grid nodes");
}

}  // namespace

void write_csv(const ComplexField& f, const std::string& path) {
  std::ofstream os;
  open_out(os, path);
  os << "x,y,re,im\n";
  const auto& d = f.domain;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto [i, j] = d.ij(k);
    os << fmt(d.x(i)) << ',' << fmt(d.y(j)) << ',' << fmt(f[k].real()) << ',' << fmt(f[k].imag())
       << '\n';
  }
}

void write_csv(const RealField& f, const std::string& path) {
  std::ofstream os;
  open_out(os, path);
  os << "x,y,val\n";
  const auto& d = f.domain;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const auto [i, j] = d.ij(k);
    os << fmt(d.x(i)) << ',' << fmt(d.y(j)) << ',' << fmt(f[k]) << '\n';
  }
}

ComplexField read_complex_csv(const std::string& path, const GridDomain& d) {
  ComplexField f(d);
  read_rows(path, d, 4, [&](std::size_t k, const std::vector<double>& c) { f[k] = {c[2], c[3]}; });
  return f;
}

RealField read_real_csv(const std::string& path, const GridDomain& d) {
  RealField f(d);
  read_rows(path, d, 3, [&](std::size_t k, const std::vector<double>& c) { f[k] = c[2]; });
  return f;
}

void write_grid_sidecar(const GridDomain& d, const std::string& path) {
  nlohmann::json j;
  j["origin"] = {d.x0, d.y0};
  j["step"] = {d.h1, d.h2};
  j["size"] = {d.n1, d.n2};
  j["kind"] = to_string(d.kind);
  std::ofstream os;
  open_out(os, path);
  os << j.dump(2) << '\n';
}

GridDomain read_grid_sidecar(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot read " + path);
  const auto j = nlohmann::json::parse(is);
  return GridDomain(j.at("origin")[0].get<double>(), j.at("origin")[1].get<double>(),
                    j.at("step")[0].get<double>(), j.at("step")[1].get<double>(),
                    j.at("size")[0].get<std::size_t>(), j.at("size")[1].get<std::size_t>(),
                    grid_kind_from_string(j.at("kind").get<std::string>()));
}

}  // namespace liesurf
