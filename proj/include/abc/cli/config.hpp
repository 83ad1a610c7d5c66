#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abc/errors.hpp"
#include "abc/field.hpp"
#include "abc/frac_ops.hpp"
#include "abc/spectral.hpp"
#include "abc/time_series.hpp"

namespace abc::cli {

/// Malformed scenario file. what() reads "<source>:<line>: <key>: <reason>".
class ConfigError : public ConfigurationError {
 public:
  ConfigError(const std::string& source, int line, const std::string& key, const std::string& reason);
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Spatial profile: "zero", "parabola" (x (L - x)), "mode:k", or a
/// comma-separated list of modal coefficients (missing trailing modes are zero).
struct ProfileSpec {
  enum class Kind { zero, parabola, mode, list } kind = Kind::zero;
  int mode = 0;
  std::vector<double> coeffs;
};

/// Time factor: "zero", "constant:c", "sin:w", "cos:w".
struct TimeSpec {
  enum class Kind { zero, constant, sin, cos } kind = Kind::zero;
  double value = 0.0;
};

struct TableRow {
  double t = 0.0;
  int mode = 0;
  double coefficient = 0.0;
};

/// "zero", "<time> * <profile>", or "table:<path>" with columns t,mode_index,coefficient
/// (the layout of modal.csv). Table values are interpolated linearly in t and held
/// constant outside the tabulated range.
struct FieldSpec {
  enum class Kind { zero, separable, table } kind = Kind::zero;
  TimeSpec time;
  ProfileSpec profile;
  std::vector<TableRow> table;
};

struct ControlSection {
  double n_reg = 0.0;
  FieldSpec z_d;
  double cg_tol = 1e-8;
  int max_iter = 200;
};

struct ScenarioConfig {
  std::string source;  ///< file name used in messages
  double alpha = 0.5;
  double t_final = 1.0;
  double length_l = 1.0;
  int n_modes = 16;
  int n_time = 512;
  int quad_points = 4096;
  ProfileSpec y0;
  FieldSpec f;
  std::optional<ControlSection> control;
  std::string output_dir = "out";
};

/// Sections and keys:
///   [scenario] alpha, t_final, length, n_modes, n_time, quad_points
///   [data]     y0, f
///   [control]  n_reg, z_d, cg_tol, max_iter
///   [output]   dir
/// '#' and ';' start comments. Relative table paths resolve against base_dir.
ScenarioConfig parse_scenario(std::string_view text, const std::string& source, const std::string& base_dir = ".");
ScenarioConfig load_scenario(const std::string& path);

SpectralBasis make_basis(const ScenarioConfig& cfg);
TimeGrid make_grid(const ScenarioConfig& cfg, int n_time);
AlphaContext make_context(const ScenarioConfig& cfg);
ModalCoefficients make_profile(const ProfileSpec& spec, const SpectralBasis& basis);
Field make_field(const FieldSpec& spec, const SpectralBasis& basis, const TimeGrid& grid);

}  // namespace abc::cli
