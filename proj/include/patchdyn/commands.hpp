#pragma once

#include <iosfwd>
#include <string>

#include "patchdyn/experiment_spec.hpp"
#include "patchdyn/report_io.hpp"

namespace patchdyn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSpecError = 1;
inline constexpr int kExitDiverged = 2;

struct CommandOptions {
  std::string out_dir = ".";
  int jobs = 1;
  std::ostream* log = nullptr;
};

/// Runs one schedule of the spec at Nt macro steps (final time held fixed).
RunRecord run_entry(const ExperimentSpec& spec, const ScheduleSpec& schedule, int nt, int jobs);

/// Initial coarse field of the benchmark, point-sampled or tooth-averaged.
CoarseField<double> initial_field(const ExperimentSpec& spec, const ValidatedConfig& cfg);

int cmd_run(const ExperimentSpec& spec, const CommandOptions& options);
int cmd_table(const ExperimentSpec& spec, const CommandOptions& options);
int cmd_fields(const ExperimentSpec& spec, const CommandOptions& options);
int cmd_validate(const ExperimentSpec& spec, const CommandOptions& options);

}  // namespace patchdyn
