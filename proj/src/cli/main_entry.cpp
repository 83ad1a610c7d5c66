#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

#include "abc/cli/commands.hpp"

namespace abc::cli {

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal control of the Atangana-Baleanu-Caputo fractional diffusion equation"};
  app.require_subcommand(1);

  std::string config_path, out_dir, suite = "all";
  int refinements = 3;

  auto* solve = app.add_subcommand("solve", "Solve the forward problem");
  auto* opt = app.add_subcommand("optimize", "Solve the optimal control problem");
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  auto* conv = app.add_subcommand("convergence", "Forward and duality residuals under dt refinement");
  for (auto* sub : {solve, opt, conv}) {
    sub->add_option("--config", config_path, "Scenario file")->required();
    sub->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  }
  verify->add_option("--config", config_path, "Ignored; accepted for a uniform invocation");
  verify->add_option("--suite", suite, "mlf, fracops, duality, adjoint, gradient or all");
  conv->add_option("--refinements", refinements, "Number of dt halvings (>= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  }

  ScenarioConfig cfg;
  try {
    if (verify->parsed()) {
      const auto& names = verify_suites();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        err << "error: unknown suite '" << suite << "'\n";
        return exit_config;
      }
      return run_verify(suite, out);
    }
    cfg = load_scenario(config_path);
    const std::string dir = out_dir.empty() ? cfg.output_dir : out_dir;
    if (solve->parsed()) return run_solve(cfg, dir, out);
    if (opt->parsed()) return run_optimize(cfg, dir, out);
    return run_convergence(cfg, refinements, dir, out);
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const GridError& e) {
    err << "error: " << e.what() << "\n";
    return exit_config;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_accuracy;
  }
}

}  // namespace abc::cli
