#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "patchdyn/coupling.hpp"
#include "patchdyn/grid.hpp"
#include "patchdyn/micro.hpp"

namespace patchdyn {

/// Closed-form effective solution of u_t = u_xx + u, u(x,0) = sin(pi x),
/// u(0,t) = u(1,t) = 0.
inline double analytic_solution(double x, double t) {
  constexpr double pi = std::numbers::pi;
  return std::sin(pi * x) * std::exp((1.0 - pi * pi) * t);
}

/// The benchmark initial condition and its antiderivative.
inline double sine_profile(double x) { return std::sin(std::numbers::pi * x); }
inline double sine_antiderivative(double x) {
  return -std::cos(std::numbers::pi * x) / std::numbers::pi;
}

struct OracleOptions {
  double fine_dx = 1e-3;
  /// Fine time step as a fraction of the explicit limit fine_dx^2 / (2 D).
  double stability_fraction = 0.8;
  std::function<double(double)> initial = sine_profile;
};

/// Brute-force FTCS over the whole domain with Dirichlet ends, tooth-averaged
/// onto the macro nodes at every macro step boundary up to `final_time`.
/// Shares nothing with the patch machinery beyond the quadrature rule.
template <typename Scalar = double>
std::vector<CoarseField<Scalar>> full_domain_oracle(const ValidatedConfig& cfg,
                                                    const MicroProblem<Scalar>& prob,
                                                    double final_time,
                                                    const OracleOptions& options = {}) {
  const double length = cfg.domain_hi() - cfg.domain_lo();
  const double dx = options.fine_dx;
  auto integer_ratio = [](double a, double b) {
    const double r = a / b;
    const double n = std::round(r);
    return std::abs(r - n) <= 1e-9 * std::max(1.0, n) ? static_cast<long>(n) : -1L;
  };
  const long cells = integer_ratio(length, dx);
  const long per_macro = integer_ratio(cfg.delta_x(), dx);
  const long per_tooth = integer_ratio(cfg.patch_width(), dx);
  if (cells < 2 || per_macro < 1 || per_tooth < 2 || per_tooth % 2 != 0) {
    throw std::invalid_argument("GeometryError: fine grid must align with macro nodes and tooth edges");
  }
  const double d = static_cast<double>(prob.diffusivity);
  const double limit = dx * dx / (2.0 * d);
  if (!(options.stability_fraction > 0.0 && options.stability_fraction <= 1.0)) {
    throw std::invalid_argument("StabilityViolation: stability_fraction must lie in (0, 1]");
  }
  const long substeps =
      static_cast<long>(std::ceil(cfg.delta_t() / (options.stability_fraction * limit) - 1e-9));
  const double dt = cfg.delta_t() / static_cast<double>(substeps);
  if (dt > limit) throw std::invalid_argument("StabilityViolation: fine time step too large");

  Vector<Scalar> u(cells + 1);
  for (long i = 0; i <= cells; ++i) {
    u[i] = static_cast<Scalar>(options.initial(cfg.domain_lo() + static_cast<double>(i) * dx));
  }
  u[0] = static_cast<Scalar>(cfg.boundary_left());
  u[cells] = static_cast<Scalar>(cfg.boundary_right());

  const long half_tooth = per_tooth / 2;
  auto restrict_fine = [&](double time) {
    CoarseField<Scalar> field;
    field.time = time;
    field.values.resize(cfg.n_macro() + 1);
    for (int j = 1; j < cfg.n_macro(); ++j) {
      const long center = j * per_macro;
      field.values[j] = simpson_average<Scalar>(u.segment(center - half_tooth, per_tooth + 1));
    }
    pin_boundaries(field, cfg);
    field.diverged = !field.all_finite();
    return field;
  };

  const Scalar a = prob.diffusivity * static_cast<Scalar>(dt / (dx * dx));
  const Scalar b = prob.reaction_coefficient * static_cast<Scalar>(dt);
  std::vector<CoarseField<Scalar>> series{restrict_fine(0.0)};
  const long macro_steps = static_cast<long>(std::floor(final_time / cfg.delta_t() + 1e-9));
  Vector<Scalar> next = u;
  for (long n = 1; n <= macro_steps; ++n) {
    for (long s = 0; s < substeps; ++s) {
      next.segment(1, cells - 1) =
          u.segment(1, cells - 1) +
          a * (u.segment(2, cells - 1) - 2 * u.segment(1, cells - 1) + u.segment(0, cells - 1)) +
          b * u.segment(1, cells - 1);
      u.swap(next);
    }
    series.push_back(restrict_fine(static_cast<double>(n) * cfg.delta_t()));
  }
  return series;
}

/// Maximum errors over all snapshots and interior nodes, in percent.
struct ErrorSummary {
  /// 100 * max |U - U_ref| / max |U_ref|, both maxima over all times and nodes.
  double global_percent = 0.0;
  /// 100 * max over times of (max_j |U - U_ref| / max_j |U_ref|).
  double per_time_percent = 0.0;
  std::vector<double> times;
  std::vector<double> max_abs_error;
  std::vector<double> max_abs_reference;
};

/// Compares matching snapshot series. A non-finite run value makes both
/// percentages infinite.
template <typename Scalar>
ErrorSummary max_percent_error(const std::vector<CoarseField<Scalar>>& run,
                               const std::vector<CoarseField<Scalar>>& reference) {
  if (run.size() != reference.size()) throw std::invalid_argument("snapshot counts differ");
  ErrorSummary out;
  double worst_error = 0.0;
  double worst_reference = 0.0;
  bool finite = true;
  for (std::size_t n = 0; n < run.size(); ++n) {
    const auto& u = run[n].values;
    const auto& r = reference[n].values;
    if (u.size() != r.size()) throw std::invalid_argument("node counts differ");
    double err = 0.0;
    double ref = 0.0;
    for (Eigen::Index j = 1; j + 1 < u.size(); ++j) {
      const double e = std::abs(static_cast<double>(u[j]) - static_cast<double>(r[j]));
      if (!std::isfinite(e)) finite = false;
      err = std::max(err, e);
      ref = std::max(ref, std::abs(static_cast<double>(r[j])));
    }
    out.times.push_back(run[n].time);
    out.max_abs_error.push_back(finite ? err : std::numeric_limits<double>::infinity());
    out.max_abs_reference.push_back(ref);
    worst_error = std::max(worst_error, err);
    worst_reference = std::max(worst_reference, ref);
    if (ref > 0.0) out.per_time_percent = std::max(out.per_time_percent, 100.0 * err / ref);
  }
  if (!finite) {
    out.global_percent = out.per_time_percent = std::numeric_limits<double>::infinity();
    return out;
  }
  out.global_percent = worst_reference > 0.0 ? 100.0 * worst_error / worst_reference : 0.0;
  return out;
}

/// Samples `reference(x, t)` at the nodes and times of `run`.
template <typename Scalar>
std::vector<CoarseField<Scalar>> sample_reference(const std::vector<CoarseField<Scalar>>& run,
                                                  const ValidatedConfig& cfg,
                                                  const std::function<double(double, double)>& reference) {
  std::vector<CoarseField<Scalar>> out;
  out.reserve(run.size());
  for (const auto& snap : run) {
    out.push_back(sample_field<Scalar>(cfg, [&](double x) { return reference(x, snap.time); }, snap.time));
  }
  return out;
}

}  // namespace patchdyn
