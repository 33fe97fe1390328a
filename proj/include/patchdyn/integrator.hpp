#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "patchdyn/gtt.hpp"
#include "patchdyn/reference.hpp"
#include "patchdyn/schedule.hpp"

namespace patchdyn {

/// Any entry above this magnitude (or non-finite) flags divergence.
inline constexpr double kDivergenceThreshold = 1e6;

/// Forward Euler over `span`: U_j += span * F_j on interior nodes.
template <typename Scalar>
CoarseField<Scalar> extrapolate(const CoarseField<Scalar>& field, const Vector<Scalar>& derivative,
                                double span, const ValidatedConfig& cfg) {
  if (span < 0.0) throw std::invalid_argument("extrapolation span must be non-negative");
  if (derivative.size() != field.size()) throw std::invalid_argument("derivative length mismatch");
  CoarseField<Scalar> out = field;
  const Eigen::Index inner = field.size() - 2;
  if (inner > 0) {
    out.values.segment(1, inner) += static_cast<Scalar>(span) * derivative.segment(1, inner);
  }
  pin_boundaries(out, cfg);
  out.time = field.time + span;
  out.diverged = field.diverged || !out.all_finite();
  return out;
}

struct RunReport {
  std::vector<CoarseField<double>> snapshots;
  bool diverged = false;
  std::optional<double> divergence_time;
  std::optional<ErrorSummary> errors;
  long gtt_count = 0;
  long extrapolation_count = 0;
  double wall_time = 0.0;

  /// Default normalization (global maximum of the reference); NaN without a reference.
  double max_percent_error() const {
    return errors ? errors->global_percent : std::numeric_limits<double>::quiet_NaN();
  }
};

struct RunOptions {
  int jobs = 1;
  /// Reference U_ref(x, t) compared against every snapshot, if given.
  std::function<double(double, double)> reference;
  /// Precomputed reference series (e.g. the full-domain oracle); takes
  /// precedence over `reference`.
  std::optional<std::vector<CoarseField<double>>> reference_series;
  /// Called after each macro step with the step index and field.
  std::function<void(int, const CoarseField<double>&)> on_step;
};

/// Marches `initial` through n_macro_steps macro steps of `schedule`. Per
/// group: k_i GTTs, then (unless it is the closing group of GPD_II) one
/// derivative-estimation GTT and a forward Euler span. Divergence is recorded
/// and the run continues to the final time.
inline RunReport run(const CoarseField<double>& initial, const GttSchedule& schedule,
                     const MicroProblem<double>& problem, const ValidatedConfig& cfg,
                     const RunOptions& options = {}) {
  check_schedule(schedule, cfg);
  const auto started = std::chrono::steady_clock::now();
  const GapToothStepper<double> stepper(cfg, problem, options.jobs);

  RunReport report;
  CoarseField<double> field = initial;
  pin_boundaries(field, cfg);
  report.snapshots.push_back(field);
  const double t0 = field.time;

  for (int n = 0; n < cfg.n_macro_steps(); ++n) {
    for (const auto& group : schedule.groups) {
      for (int m = 0; m < group.gtts; ++m) field = stepper.step(field);
      report.gtt_count += group.gtts;
      if (group.extrapolates) {
        const Vector<double> derivative = stepper.time_derivative(field);
        ++report.gtt_count;
        field = extrapolate(field, derivative, group.span, cfg);
        ++report.extrapolation_count;
      }
    }
    const double expected = t0 + (n + 1) * cfg.delta_t();
    if (std::abs(field.time - expected) > 1e-12 * std::max(1.0, std::abs(expected)) + 1e-12 * cfg.delta_t()) {
      throw std::logic_error("macro step does not close on t_n + delta_t");
    }
    field.time = expected;
    if (check_divergence(field, kDivergenceThreshold) && !report.diverged) {
      report.diverged = true;
      report.divergence_time = field.time;
    }
    report.snapshots.push_back(field);
    if (options.on_step) options.on_step(n + 1, field);
  }

  if (options.reference_series) {
    report.errors = max_percent_error(report.snapshots, *options.reference_series);
  } else if (options.reference) {
    report.errors = max_percent_error(report.snapshots,
                                      sample_reference(report.snapshots, cfg, options.reference));
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace patchdyn
