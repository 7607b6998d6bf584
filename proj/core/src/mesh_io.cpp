#include "liesurf/mesh_io.hpp"

#include <cstdio>
#include <memory>

namespace liesurf {

namespace {

using File = std::unique_ptr<std::FILE, int (*)(std::FILE*)>;

File open(const std::string& path) {
  File f(std::fopen(path.c_str(), "w"), &std::fclose);
  if (!f) throw Error("cannot open " + path + " for writing");
  return f;
}

}  // namespace

void write_obj(const R3Mesh& m, const std::string& path) {
  File f = open(path);
  std::fprintf(f.get(), "# %zu vertices, %zu quads\n", m.vertices.size(), m.quads.size());
  for (const Vec3& v : m.vertices) std::fprintf(f.get(), "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
  for (const auto& q : m.quads) std::fprintf(f.get(), "f %zu %zu %zu %zu\n", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
}

void write_ply(const R3Mesh& m, const std::string& path) {
  File f = open(path);
  std::fprintf(f.get(),
               "ply\nformat ascii 1.0\nelement vertex %zu\nproperty double x\nproperty double y\n"
               "property double z\nelement face %zu\nproperty list uchar uint vertex_indices\nend_header\n",
               m.vertices.size(), m.quads.size());
  for (const Vec3& v : m.vertices) std::fprintf(f.get(), "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
  for (const auto& q : m.quads) std::fprintf(f.get(), "4 %zu %zu %zu %zu\n", q[0], q[1], q[2], q[3]);
}

void write_profile_csv(const RevolutionProfile& p, const std::string& path) {
  File f = open(path);
  std::fprintf(f.get(), "s,alpha,beta,gamma\n");
  for (std::size_t k = 0; k < p.s.size(); ++k)
    std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g\n", p.s[k], p.alpha[k], p.beta[k], p.gamma[k]);
}

void write_sample_csv(const SurfaceSample& s, const std::string& path) {
  File f = open(path);
  std::fprintf(f.get(), "x,y,x1,x2,x3,x4\n");
  const GridDomain& d = s.domain;
  for (std::size_t i = 0; i < d.n1; ++i)
    for (std::size_t j = 0; j < d.n2; ++j) {
      const Vec4& p = s.points[d.index(i, j)];
      std::fprintf(f.get(), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", d.x(i), d.y(j), p[0], p[1], p[2], p[3]);
    }
}

}  // namespace liesurf
