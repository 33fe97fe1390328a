#pragma once

#include <algorithm>
#include <thread>
#include <vector>

#include "patchdyn/coupling.hpp"
#include "patchdyn/micro.hpp"

namespace patchdyn {

/// One gap-tooth timestep over all interior teeth: slopes, lift, evolve for
/// tau, restrict. Every patch reads only the frozen input field and writes its
/// own output slot, so the result does not depend on `jobs`.
template <typename Scalar>
class GapToothStepper {
 public:
  GapToothStepper(const ValidatedConfig& cfg, MicroProblem<Scalar> problem, int jobs = 1)
      : coupling_(cfg), problem_(problem), jobs_(std::max(1, jobs)) {}

  const ValidatedConfig& config() const { return coupling_.config(); }
  const Coupling<Scalar>& coupling() const { return coupling_; }
  const MicroProblem<Scalar>& problem() const { return problem_; }
  int jobs() const { return jobs_; }

  /// Advances one tooth by tau and returns its restricted average.
  Scalar advance_tooth(const CoarseField<Scalar>& field, int j) const {
    const auto& cfg = config();
    PatchState<Scalar> patch = coupling_.lift(field, j);
    patch = evolve_patch(std::move(patch), problem_, static_cast<Scalar>(cfg.micro_dx()),
                         static_cast<Scalar>(cfg.micro_dt()), cfg.micro_steps_per_tau());
    return restrict_average(patch);
  }

  CoarseField<Scalar> step(const CoarseField<Scalar>& field) const {
    const auto& cfg = config();
    const int n = cfg.n_macro();
    CoarseField<Scalar> out;
    out.values.resize(n + 1);
    out.time = field.time + cfg.tau();

    const int interior = n - 1;
    const int workers = std::min(jobs_, std::max(1, interior));
    if (workers == 1) {
      for (int j = 1; j < n; ++j) out.values[j] = advance_tooth(field, j);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (int j = 1 + w; j < n; j += workers) out.values[j] = advance_tooth(field, j);
        });
      }
    }
    pin_boundaries(out, cfg);
    out.diverged = field.diverged || !out.all_finite();
    return out;
  }

  /// F_j = (U_j^{k+1} - U_j^k) / tau from one extra step. The extra step is
  /// not part of the timeline: the input field and its time are untouched.
  Vector<Scalar> time_derivative(const CoarseField<Scalar>& field) const {
    const CoarseField<Scalar> ahead = step(field);
    Vector<Scalar> derivative = (ahead.values - field.values) / static_cast<Scalar>(config().tau());
    derivative[0] = 0;
    derivative[derivative.size() - 1] = 0;
    return derivative;
  }

 private:
  Coupling<Scalar> coupling_;
  MicroProblem<Scalar> problem_;
  int jobs_;
};

template <typename Scalar>
CoarseField<Scalar> gtt_step(const CoarseField<Scalar>& field, const MicroProblem<Scalar>& problem,
                             const ValidatedConfig& cfg) {
  return GapToothStepper<Scalar>(cfg, problem).step(field);
}

template <typename Scalar>
Vector<Scalar> estimate_time_derivative(const CoarseField<Scalar>& field,
                                        const MicroProblem<Scalar>& problem,
                                        const ValidatedConfig& cfg) {
  return GapToothStepper<Scalar>(cfg, problem).time_derivative(field);
}

}  // namespace patchdyn
