#include "patchdyn/config.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace patchdyn {

std::string to_string(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::StabilityViolation: return "StabilityViolation";
    case ConfigErrorKind::NonCommensurate: return "NonCommensurate";
    case ConfigErrorKind::GeometryError: return "GeometryError";
    case ConfigErrorKind::InvalidParameter: return "InvalidParameter";
  }
  return "Unknown";
}

bool ValidationResult::has(ConfigErrorKind kind) const {
  for (const auto& issue : issues) {
    if (issue.kind == kind) return true;
  }
  return false;
}

std::string ValidationResult::message() const {
  std::ostringstream os;
  for (const auto& issue : issues) {
    os << to_string(issue.kind) << ": " << issue.message << '\n';
  }
  return os.str();
}

namespace {

// Nearest integer to `ratio` if it lies within kSnapTolerance (relative).
std::optional<long> snap_ratio(double ratio) {
  if (!std::isfinite(ratio) || ratio < 0.5) return std::nullopt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) > kSnapTolerance * nearest) return std::nullopt;
  return static_cast<long>(nearest);
}

}  // namespace

ValidationResult validate_config(const MacroConfig& cfg) {
  ValidationResult result;
  auto fail = [&](ConfigErrorKind kind, std::string msg) {
    result.issues.push_back({kind, std::move(msg)});
  };
  auto positive = [&](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ConfigErrorKind::InvalidParameter, std::string(name) + " must be positive and finite");
      return false;
    }
    return true;
  };

  bool params_ok = positive(cfg.delta_x, "delta_x");
  params_ok &= positive(cfg.delta_t, "delta_t");
  params_ok &= positive(cfg.patch_width, "patch_width");
  params_ok &= positive(cfg.tau, "tau");
  params_ok &= positive(cfg.micro_dx, "micro_dx");
  params_ok &= positive(cfg.micro_dt, "micro_dt");
  if (cfg.n_macro < 1) {
    fail(ConfigErrorKind::InvalidParameter, "n_macro must be at least 1");
    params_ok = false;
  }
  if (cfg.n_macro_steps < 1) {
    fail(ConfigErrorKind::InvalidParameter, "n_macro_steps must be at least 1");
  }
  if (cfg.poly_degree < 2 || cfg.poly_degree % 2 != 0) {
    fail(ConfigErrorKind::InvalidParameter, "poly_degree must be an even integer >= 2");
  } else if (cfg.n_macro >= 1 && cfg.poly_degree > 2 * cfg.n_macro) {
    fail(ConfigErrorKind::InvalidParameter, "poly_degree too large for the number of macro intervals");
  }
  if (cfg.macro_pde_order < 0) {
    fail(ConfigErrorKind::InvalidParameter, "macro_pde_order must be non-negative");
  }
  if (cfg.relaxation_time_hint && *cfg.relaxation_time_hint < 0.0) {
    fail(ConfigErrorKind::InvalidParameter, "relaxation_time_hint must be non-negative");
  }
  if (!params_ok) return result;

  const double length = cfg.domain_hi - cfg.domain_lo;
  if (!(length > 0.0)) {
    fail(ConfigErrorKind::GeometryError, "domain_hi must exceed domain_lo");
  } else if (std::abs(cfg.n_macro * cfg.delta_x - length) > 1e-9 * length) {
    fail(ConfigErrorKind::GeometryError, "n_macro * delta_x must equal the domain length");
  }
  if (cfg.patch_width >= cfg.delta_x) {
    fail(ConfigErrorKind::GeometryError, "patch_width must be smaller than delta_x (teeth overlap)");
  }
  if (cfg.delta_t <= cfg.tau) {
    fail(ConfigErrorKind::GeometryError, "delta_t must exceed tau");
  }

  const auto intervals = snap_ratio(cfg.patch_width / cfg.micro_dx);
  const auto steps = snap_ratio(cfg.tau / cfg.micro_dt);
  if (!intervals) {
    fail(ConfigErrorKind::NonCommensurate, "patch_width / micro_dx is not an integer");
  } else if (*intervals % 2 != 0) {
    fail(ConfigErrorKind::NonCommensurate, "patch_width / micro_dx must be even for Simpson quadrature");
  }
  if (!steps) {
    fail(ConfigErrorKind::NonCommensurate, "tau / micro_dt is not an integer");
  }
  if (intervals && steps) {
    const double dx = cfg.patch_width / static_cast<double>(*intervals);
    const double dt = cfg.tau / static_cast<double>(*steps);
    if (dt > 0.5 * dx * dx) {
      std::ostringstream os;
      os.precision(6);
      os << "micro_dt = " << dt << " exceeds micro_dx^2/2 = " << 0.5 * dx * dx;
      fail(ConfigErrorKind::StabilityViolation, os.str());
    }
  }

  if (result.issues.empty()) {
    result.config = ValidatedConfig(cfg, static_cast<int>(*intervals), static_cast<int>(*steps));
  }
  return result;
}

ValidatedConfig require_valid(const MacroConfig& cfg) {
  auto result = validate_config(cfg);
  if (!result.ok()) throw std::invalid_argument(result.message());
  return *result.config;
}

}  // namespace patchdyn
