#pragma once

#include <optional>
#include <string>
#include <vector>

namespace patchdyn {

/// How the inter-tooth polynomial is fitted to the coarse values.
enum class Interpolation {
  BoxAverage,  ///< polynomial box averages over each tooth equal the coarse values
  PointValue   ///< plain Lagrange interpolation through the coarse node values
};

/// Raw discretization parameters, as read from a configuration document.
struct MacroConfig {
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  double delta_x = 0.05;
  int n_macro = 20;
  double delta_t = 1e-3;
  int n_macro_steps = 1000;
  double patch_width = 0.02;
  double tau = 1e-5;
  double micro_dx = 2e-4;
  double micro_dt = 1.6e-8;
  int poly_degree = 2;
  int macro_pde_order = 2;
  std::optional<double> relaxation_time_hint;
  Interpolation interpolation = Interpolation::BoxAverage;
  double boundary_left = 0.0;
  double boundary_right = 0.0;
};

enum class ConfigErrorKind {
  StabilityViolation,
  NonCommensurate,
  GeometryError,
  InvalidParameter
};

struct ConfigIssue {
  ConfigErrorKind kind;
  std::string message;
};

std::string to_string(ConfigErrorKind kind);

/// A configuration that passed validation. The micro grid is snapped so that
/// patch_width and tau are exact integer multiples of micro_dx and micro_dt.
class ValidatedConfig {
 public:
  const MacroConfig& raw() const { return raw_; }

  double domain_lo() const { return raw_.domain_lo; }
  double domain_hi() const { return raw_.domain_hi; }
  double delta_x() const { return raw_.delta_x; }
  int n_macro() const { return raw_.n_macro; }
  double delta_t() const { return raw_.delta_t; }
  int n_macro_steps() const { return raw_.n_macro_steps; }
  double final_time() const { return raw_.n_macro_steps * raw_.delta_t; }
  double patch_width() const { return raw_.patch_width; }
  double tau() const { return raw_.tau; }
  int poly_degree() const { return raw_.poly_degree; }
  int macro_pde_order() const { return raw_.macro_pde_order; }
  Interpolation interpolation() const { return raw_.interpolation; }
  std::optional<double> relaxation_time_hint() const { return raw_.relaxation_time_hint; }
  double boundary_left() const { return raw_.boundary_left; }
  double boundary_right() const { return raw_.boundary_right; }

  /// Number of micro intervals M across one tooth (even).
  int micro_intervals() const { return micro_intervals_; }
  /// Number of micro steps per gap-tooth timestep.
  int micro_steps_per_tau() const { return micro_steps_per_tau_; }
  /// Snapped micro spacing, patch_width / M.
  double micro_dx() const { return micro_dx_; }
  /// Snapped micro step, tau / micro_steps_per_tau.
  double micro_dt() const { return micro_dt_; }

  /// Macro node x_j = domain_lo + j * delta_x; the last node is domain_hi exactly.
  double node(int j) const {
    return j == raw_.n_macro ? raw_.domain_hi : raw_.domain_lo + j * raw_.delta_x;
  }

 private:
  friend struct ValidationResult validate_config(const MacroConfig& cfg);
  ValidatedConfig(MacroConfig raw, int intervals, int steps)
      : raw_(raw),
        micro_intervals_(intervals),
        micro_steps_per_tau_(steps),
        micro_dx_(raw.patch_width / intervals),
        micro_dt_(raw.tau / steps) {}

  MacroConfig raw_;
  int micro_intervals_;
  int micro_steps_per_tau_;
  double micro_dx_;
  double micro_dt_;
};

struct ValidationResult {
  std::optional<ValidatedConfig> config;
  std::vector<ConfigIssue> issues;

  bool ok() const { return config.has_value(); }
  bool has(ConfigErrorKind kind) const;
  std::string message() const;
};

/// Relative distance a micro ratio may sit from an integer and still be
/// snapped onto it (e.g. 0.02 / 4.4444e-5 = 450.0045).
inline constexpr double kSnapTolerance = 1e-4;

ValidationResult validate_config(const MacroConfig& cfg);

/// Validates or throws std::invalid_argument with every issue listed.
ValidatedConfig require_valid(const MacroConfig& cfg);

}  // namespace patchdyn
