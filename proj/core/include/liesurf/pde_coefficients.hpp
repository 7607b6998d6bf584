#pragma once

#include "liesurf/types.hpp"

#include <array>

namespace liesurf {

using GTable = std::array<cplx, 8>;

/// Coefficients G1..G8 of the second-order equation for g when mu1 = mu2.
/// `x` is the curvature and `sx` the branch of sqrt(x) in use (sqrt K for
/// K > 0, i sqrt(-K) for K < 0).
GTable pde_coefficients(cplx x, cplx sx, cplx g, double mu1, double mu3);

/// The same table with G1 and G8 taken literally from the original
/// statement (G7 = conj G5, G8 = conj G6). Kept to document the discrepancy.
GTable pde_coefficients_literal(cplx x, cplx sx, cplx g, double mu1, double mu3);

/// G1 d1g d2g + G2 d1g d2gb + G3 d1gb d2g + G4 d1gb d2gb
///   + G5 d1K d2g + G6 d1K d2gb + G7 d2K d1g + G8 d2K d1gb
cplx pde_rhs(const GTable& G, cplx d1g, cplx d2g, cplx d1gb, cplx d2gb, cplx d1K, cplx d2K);

}  // namespace liesurf
