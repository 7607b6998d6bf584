#pragma once

#include "liesurf/fields.hpp"
#include "liesurf/residual.hpp"

#include <optional>

namespace liesurf {

struct CorrespondenceResult {
  RealField K_target;
  ResidualReport condition_residual;
  double base_point_value = 0;  ///< gauge constant imposed at node (0, 0)
  double path_dependence = 0;   ///< max |log K*| gap between the two sweep orders
};

/// |(K_z / (2 sqrt K (1+K)))_zbar| by finite differences.
ResidualReport condition_positive(const RealField& K);
/// Equivalent form |(R_z / (1+R^2))_zbar| with R = sqrt K.
ResidualReport condition_positive_R(const RealField& K);
/// |(-4 K_u / (sqrt(-K)(1+K)))_v| by finite differences.
ResidualReport condition_negative(const RealField& K);

/// K* with log K* differing from Re log((i+sqrt K)^4/K) by a constant, fixed
/// by K*(0,0) = base. Throws GaugeUnderdetermined without a base value.
CorrespondenceResult transfer_positive(const RealField& K, std::optional<double> base);
/// Recovers K > 0 from K*, given K at node (0,0); the root is taken on the
/// same side of 1 as the base value.
RealField inverse_transfer_positive(const RealField& K_star, double base_K);

/// K* < 0 from the u-line and v-line laws; K*(0,0) = base < 0.
/// Throws InconsistentLines if the two sweep orders disagree by more than `line_tol`
/// in log|K*|.
CorrespondenceResult transfer_negative(const RealField& K, std::optional<double> base,
                                       double line_tol = 1e-8);
/// Recovers K < 0 (K != -1) from K*, given K at node (0,0).
RealField inverse_transfer_negative(const RealField& K_star, double base_K);

}  // namespace liesurf
