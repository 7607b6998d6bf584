#include "app.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace liesurf;

namespace {

void common_options(CLI::App& cmd, app::ScenarioSpec& s, std::string& group, double& tau, std::string& branch,
                    std::string& config) {
  cmd.add_option("--scenario", s.name, "s5-pseudosphere | gzbar | distance-sphere | great-sphere")
      ->capture_default_str();
  cmd.add_option("--group", group, "s3 | r3 | berger | psl2 | nil3 | sol3")->capture_default_str();
  cmd.add_option("--tau", tau, "group parameter for berger / psl2 / nil3")->capture_default_str();
  cmd.add_option("--branch", branch, "positive | negative (default: from scenario and --k)")
      ->check(CLI::IsMember({"positive", "negative"}));
  cmd.add_option("--k", s.k, "constant extrinsic curvature");
  cmd.add_option("--k-file", s.k_file, "per-node curvature CSV (x,y,val)");
  cmd.add_option("--g-file", s.g_file, "Gauss map CSV (x,y,re,im); needs --grid");
  cmd.add_option("--grid", s.grid_file, "grid sidecar JSON");
  cmd.add_option("--h", s.h, "grid step");
  cmd.add_option("--radius", s.radius, "distance-sphere radius")->capture_default_str();
  cmd.add_option("--base", s.base, "target curvature at the grid origin");
  cmd.add_option("--direction", s.direction, "r3-to-s3 | s3-to-r3")->capture_default_str();
  cmd.add_option("--export", s.export_format, "obj | ply")->check(CLI::IsMember({"obj", "ply"}));
  cmd.add_option("--pole", s.pole, "stereographic projection axis 0..3")->capture_default_str();
  cmd.add_option("--out", s.out, "output directory")->capture_default_str();
  cmd.add_option("--config", config, "JSON configuration file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Surfaces of constant extrinsic curvature in three-dimensional Lie groups"};
  cli.set_help_flag("--help", "print this help and exit");
  cli.require_subcommand(1);
  app::ScenarioSpec spec;
  std::string group = "s3", branch, config;
  double tau = 1.0;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const app::ScenarioSpec&);
  };
  const Command commands[] = {
      {"verify", "residual checks of the frame equations and integrability conditions", app::run_verify},
      {"reconstruct", "integrate the frame, check closure and curvature", app::run_reconstruct},
      {"correspond", "transfer curvature between S3 and R3", app::run_correspond},
      {"oracle", "finite-difference curvature of a sampled surface", app::run_oracle},
      {"export", "write meshes and profiles", app::run_export},
  };
  int status = 0;
  for (const Command& c : commands) {
    CLI::App* sub = cli.add_subcommand(c.name, c.help);
    common_options(*sub, spec, group, tau, branch, config);
    sub->callback([&, run = c.run] {
      try {
        spec.group = GroupPreset::parse(group, tau);
        if (!branch.empty()) spec.branch = branch == "negative" ? app::Branch::Negative : app::Branch::Positive;
        if (!config.empty()) spec.config = app::Config::load(config);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        status = 2;
        return;
      }
      status = run(spec);
    });
  }
  CLI11_PARSE(cli, argc, argv);
  return status;
}
