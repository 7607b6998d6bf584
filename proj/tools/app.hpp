#pragma once

#include "liesurf/fields.hpp"
#include "liesurf/lie_structure.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace liesurf::app {

using json = nlohmann::json;

enum class Branch { Positive, Negative };

/// Tolerances: algebraic checks use a fixed bound, finite-difference
/// residuals use fd_scale * h^2, oracle curvature uses oracle_scale * h^2.
struct Config {
  double algebraic = 1e-10;
  double fd_scale = 5;
  double oracle_scale = 5;
  double loop_scale = 1;  ///< loop-closure defect bound: loop_scale * h^3
  double line_tol = 1e-8;

  static Config load(const std::string& path);
  json to_json() const;
};

struct ScenarioSpec {
  std::string name = "s5-pseudosphere";
  GroupPreset group{GroupKind::S3};
  std::optional<Branch> branch;   ///< inferred from the scenario when empty
  std::optional<double> h;        ///< grid step; scenario default when empty
  std::optional<double> k;        ///< constant curvature
  std::string k_file;             ///< per-node curvature CSV (overrides k)
  std::string g_file, grid_file;  ///< Gauss map CSV plus grid sidecar (replaces the builtin g)
  double radius = 0.7853981633974483;
  std::optional<double> base;
  std::string direction = "r3-to-s3";
  std::string export_format;      ///< "", "obj" or "ply"
  int pole = 3;
  std::string out = "liesurf_out";
  Config config;

  Branch resolved_branch() const;
  json to_json() const;
};

struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool passed() const { return value <= tolerance; }
};

/// Collects checks and artifacts; serialized as the run manifest.
class Manifest {
 public:
  Manifest(std::string command, const ScenarioSpec& spec);

  void check(std::string name, double value, double tolerance);
  void artifact(const std::string& path);
  void note(const std::string& key, json value);
  void fail(const std::string& error);

  bool passed() const;
  json to_json() const;
  /// Writes <out>/manifest.json and returns the exit status.
  int finish() const;

 private:
  std::string command_;
  json spec_;
  std::string out_;
  std::vector<Check> checks_;
  std::vector<std::string> artifacts_;
  std::vector<std::string> errors_;
  json notes_ = json::object();
};

int run_verify(const ScenarioSpec& spec);
int run_reconstruct(const ScenarioSpec& spec);
int run_correspond(const ScenarioSpec& spec);
int run_oracle(const ScenarioSpec& spec);
int run_export(const ScenarioSpec& spec);

}  // namespace liesurf::app
