#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "abc/cli/config.hpp"

namespace abc::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_config = 2,
  exit_accuracy = 3,
  exit_not_converged = 4,
};

/// 17 significant digits, the C locale, no trailing padding.
std::string format_number(double v);

/// Writes modal.csv, field.csv and diagnostics.csv into out_dir.
int run_solve(const ScenarioConfig& cfg, const std::string& out_dir, std::ostream& log);

/// Writes control.csv, state.csv, adjoint.csv and optimize_log.csv; exit_not_converged
/// when the iteration cap is hit (files are still written).
int run_optimize(const ScenarioConfig& cfg, const std::string& out_dir, std::ostream& log);

/// Halves dt `refinements` times starting from cfg.n_time and writes convergence.csv.
int run_convergence(const ScenarioConfig& cfg, int refinements, const std::string& out_dir, std::ostream& log);

struct VerifyLine {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  enum class Sense { at_most, below, at_least } sense = Sense::at_most;
  bool pass() const;
};

const std::vector<std::string>& verify_suites();
/// Runs one suite ("all" runs every suite). Throws ConfigurationError for an unknown name.
std::vector<VerifyLine> verify_suite(const std::string& suite);
/// Prints `ok <name> <measured> <bound>` or `FAIL ...` per check; exit_verify_failed on any failure.
int run_verify(const std::string& suite, std::ostream& log);

/// Full command-line entry point (argv[0] is the program name).
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace abc::cli
