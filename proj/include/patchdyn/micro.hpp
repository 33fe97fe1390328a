#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "patchdyn/config.hpp"
#include "patchdyn/grid.hpp"

namespace patchdyn {

/// Linear reaction-diffusion law u_t = D u_xx + r u, solved inside the teeth.
template <typename Scalar>
struct MicroProblem {
  Scalar diffusivity = 1;
  Scalar reaction_coefficient = 1;
};

enum class Side { Left, Right };

/// Ghost node value that makes the centered difference across the tooth edge
/// equal `slope`.
template <typename Scalar>
Scalar ghost_value(Scalar adjacent_sample, Scalar slope, Side side, Scalar micro_dx) {
  return side == Side::Left ? adjacent_sample - 2 * micro_dx * slope
                            : adjacent_sample + 2 * micro_dx * slope;
}

/// FTCS with ghost-node Neumann edges. Slopes stay frozen for the whole call.
/// A non-finite sample sets `diverged` on the result instead of throwing.
template <typename Scalar>
PatchState<Scalar> evolve_patch(PatchState<Scalar> patch, const MicroProblem<Scalar>& prob,
                                Scalar micro_dx, Scalar micro_dt, long steps) {
  if (!(prob.diffusivity > 0)) throw std::invalid_argument("diffusivity must be positive");
  const Eigen::Index m = patch.intervals();
  if (m < 2) throw std::invalid_argument("patch needs at least two micro intervals");
  if (steps <= 0) return patch;

  const Scalar a = prob.diffusivity * micro_dt / (micro_dx * micro_dx);
  const Scalar b = prob.reaction_coefficient * micro_dt;
  const Scalar two_dx_left = 2 * micro_dx * patch.slope_left;
  const Scalar two_dx_right = 2 * micro_dx * patch.slope_right;

  Vector<Scalar> next(m + 1);
  Scalar* u = patch.micro_values.data();
  Scalar* v = next.data();
  for (long n = 0; n < steps; ++n) {
    const Scalar ghost_l = u[1] - two_dx_left;
    const Scalar ghost_r = u[m - 1] + two_dx_right;
    v[0] = u[0] + a * (ghost_l - 2 * u[0] + u[1]) + b * u[0];
    for (Eigen::Index i = 1; i < m; ++i) {
      v[i] = u[i] + a * (u[i + 1] - 2 * u[i] + u[i - 1]) + b * u[i];
    }
    v[m] = u[m] + a * (u[m - 1] - 2 * u[m] + ghost_r) + b * u[m];
    std::swap(u, v);
  }
  // After an odd number of swaps the newest samples live in `next`.
  if (u != patch.micro_values.data()) patch.micro_values.swap(next);

  patch.time += static_cast<double>(steps) * static_cast<double>(micro_dt);
  if (!patch.micro_values.allFinite()) patch.diverged = true;
  return patch;
}

/// Advances the patch by `duration`, which must be a whole number of micro steps.
template <typename Scalar>
PatchState<Scalar> evolve_patch(PatchState<Scalar> patch, const MicroProblem<Scalar>& prob,
                                const ValidatedConfig& cfg, double duration) {
  const double ratio = duration / cfg.micro_dt();
  const double steps = std::round(ratio);
  if (std::abs(ratio - steps) > 1e-6 * std::max(1.0, steps) || steps < 0) {
    throw std::invalid_argument("duration is not a whole number of micro steps");
  }
  const double start = patch.time;
  patch = evolve_patch(std::move(patch), prob, static_cast<Scalar>(cfg.micro_dx()),
                       static_cast<Scalar>(cfg.micro_dt()), static_cast<long>(steps));
  patch.time = start + duration;
  return patch;
}

}  // namespace patchdyn
