#pragma once

#include "liesurf/fields.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace liesurf {

struct ResidualSummary {
  double max = 0;          ///< over valid interior nodes
  double mean = 0;         ///< over valid interior nodes
  double max_all = 0;      ///< over all valid nodes, boundary included
  std::size_t counted = 0; ///< number of valid interior nodes
  std::size_t valid = 0;
};

/// Per-node residual magnitudes plus max-norm statistics. Excluded nodes
/// (pole, inadmissible) carry NaN and are left out of every statistic.
struct ResidualReport {
  std::string name;
  GridDomain domain;
  std::vector<double> residual;
  std::vector<std::uint8_t> valid;
  std::size_t margin = 2;
  ResidualSummary summary;
  std::optional<double> coarse_max;  ///< headline max on the grid with twice the step
  std::optional<double> order;       ///< log2(coarse_max / summary.max)
  double tolerance = -1;             ///< negative: no pass/fail attached

  ResidualReport() = default;
  ResidualReport(std::string name, const GridDomain& d, std::size_t margin = 2);

  void set(std::size_t node, double r) { residual[node] = r; valid[node] = 1; }
  void exclude(std::size_t node);
  /// Recomputes the summary from the payload.
  void finalize();
  bool passed() const { return tolerance < 0 || summary.max <= tolerance; }

  void write_csv(const std::string& path) const;
  std::string summary_json() const;
};

/// Evaluates `make` on `coarse` and on its refinement; returns the fine
/// report carrying the coarse max and observed order.
ResidualReport with_refinement(const std::function<ResidualReport(const GridDomain&)>& make,
                               const GridDomain& coarse);

double observed_order(double coarse, double fine);

}  // namespace liesurf
