#include "liesurf/residual.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace liesurf {

ResidualReport::ResidualReport(std::string name_, const GridDomain& d, std::size_t margin_)
    : name(std::move(name_)),
      domain(d),
      residual(d.size(), std::numeric_limits<double>::quiet_NaN()),
      valid(d.size(), 0),
      margin(margin_) {}

void ResidualReport::exclude(std::size_t node) {
  residual[node] = std::numeric_limits<double>::quiet_NaN();
  valid[node] = 0;
}

void ResidualReport::finalize() {
  summary = {};
  double sum = 0;
  for (std::size_t k = 0; k < residual.size(); ++k) {
    if (!valid[k] || !std::isfinite(residual[k])) continue;
    ++summary.valid;
    summary.max_all = std::max(summary.max_all, residual[k]);
    if (!domain.interior(k, margin)) continue;
    ++summary.counted;
    summary.max = std::max(summary.max, residual[k]);
    sum += residual[k];
  }
  summary.mean = summary.counted ? sum / static_cast<double>(summary.counted) : 0.0;
}

void ResidualReport::write_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path);
  os << "x,y,residual\n";
  char buf[96];
  for (std::size_t k = 0; k < residual.size(); ++k) {
    const auto [i, j] = domain.ij(k);
    if (valid[k])
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", domain.x(i), domain.y(j), residual[k]);
    else
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,nan\n", domain.x(i), domain.y(j));
    os << buf;
  }
}

std::string ResidualReport::summary_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["max"] = summary.max;
  j["mean"] = summary.mean;
  j["max_including_boundary"] = summary.max_all;
  j["nodes_counted"] = summary.counted;
  j["nodes_valid"] = summary.valid;
  j["h"] = {domain.h1, domain.h2};
  j["coarse_max"] = coarse_max ? nlohmann::json(*coarse_max) : nlohmann::json();
  j["order"] = order && std::isfinite(*order) ? nlohmann::json(*order) : nlohmann::json();
  if (tolerance >= 0) {
    j["tolerance"] = tolerance;
    j["pass"] = passed();
  }
  return j.dump();
}

double observed_order(double coarse, double fine) {
  if (!(coarse > 0) || !(fine > 0)) return std::numeric_limits<double>::infinity();
  return std::log2(coarse / fine);
}

ResidualReport with_refinement(const std::function<ResidualReport(const GridDomain&)>& make,
                               const GridDomain& coarse) {
  const ResidualReport c = make(coarse);
  ResidualReport f = make(coarse.refined());
  f.coarse_max = c.summary.max;
  f.order = observed_order(c.summary.max, f.summary.max);
  return f;
}

}  // namespace liesurf
