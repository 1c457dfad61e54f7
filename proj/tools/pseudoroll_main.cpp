#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "pseudoroll/commands.hpp"
#include "pseudoroll/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Rolling of pseudo-Riemannian hyperquadrics over their affine tangent "
      "spaces: simulation, verification, and reachability tooling"};
  app.require_subcommand(1);

  pseudoroll::RunOptions opts;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"roll", "integrate the kinematic equations and write the trajectory"},
      {"verify", "check the six defining conditions of a rolling map"},
      {"transport", "parallel-transport a vector along the rolling curve"},
      {"reach", "classify a target point and construct the reaching geodesic"},
      {"partition", "label a parameter grid by single-geodesic reachability"},
      {"frames", "integrate parallel frames along the rolling curve"},
      {"config-matrices",
       "compute the configuration matrices in parallel frames"},
      {"lift-check",
       "verify horizontality and causal traces of a trivialized curve"},
      {"selftest", "run the built-in identity checks"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--scenario", opts.scenario_path, "scenario JSON file");
    sub->add_option("--out", opts.out_dir, "output directory (default: .)");
    sub->add_option("--tol", opts.tol,
                    "pass/fail tolerance for verifying commands");
    sub->add_option("--step", opts.step, "override the scenario step");
    sub->add_option("--grid", opts.grid,
                    "override the partition grid (points per axis)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return pseudoroll::run_command(command, opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
