#pragma once

#include "liesurf/su2.hpp"

#include <string>

namespace liesurf {

/// Quads touching a pole-flagged vertex are dropped; vertices are kept so
/// that indices match the grid.
void write_obj(const R3Mesh& m, const std::string& path);
void write_ply(const R3Mesh& m, const std::string& path);
/// Columns s, alpha, beta, gamma.
void write_profile_csv(const RevolutionProfile& p, const std::string& path);
/// Columns x, y, x1, x2, x3, x4.
void write_sample_csv(const SurfaceSample& s, const std::string& path);

}  // namespace liesurf
