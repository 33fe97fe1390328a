#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "patchdyn/config.hpp"

namespace patchdyn {

enum class ScheduleKind { UPD, GPD_I, GPD_II };

std::string to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(const std::string& text);

/// k_i gap-tooth timesteps followed, if `extrapolates`, by a derivative
/// estimate and a forward Euler span of length `span`.
struct GttGroup {
  int gtts = 0;
  double span = 0.0;
  bool extrapolates = true;
};

/// How the k gap-tooth timesteps and the remaining Delta t - k tau of
/// extrapolation are laid out inside one macro step.
struct GttSchedule {
  ScheduleKind kind = ScheduleKind::UPD;
  std::vector<GttGroup> groups;
  int k_total = 0;

  int extrapolations_per_step() const;
  /// Executed GTTs per macro step, counting the derivative-estimation ones.
  int gtts_per_step() const;
  double total_span() const;
  std::vector<int> k_list() const;
  std::vector<double> t_list() const;
  /// "{5, 5, 5, 5, 4}" style label.
  std::string distribution() const;
  /// Self-describing row key: kind, k list, span list.
  std::string fingerprint() const;
};

enum class ScheduleErrorKind { InvalidSplit, ArityMismatch, NegativeSpan, BudgetMismatch };

class ScheduleError : public std::invalid_argument {
 public:
  ScheduleError(ScheduleErrorKind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}
  ScheduleErrorKind kind() const { return kind_; }

 private:
  ScheduleErrorKind kind_;
};

/// l equal groups (remainder spread over the earliest groups, so 24 over 5
/// gives {5, 5, 5, 5, 4}) with equal spans. UPD requires l == 1.
GttSchedule make_uniform_schedule(ScheduleKind kind, int k, int l, const ValidatedConfig& cfg);

/// Explicit group sizes; span i is fraction_i * (Delta t - k tau).
GttSchedule make_custom_schedule(ScheduleKind kind, const std::vector<int>& k_list,
                                 const std::vector<double>& t_fractions, const ValidatedConfig& cfg);

/// Throws ScheduleError if the schedule does not close Delta t for `cfg`.
void check_schedule(const GttSchedule& schedule, const ValidatedConfig& cfg);

/// Human-readable warnings, e.g. a group shorter than the relaxation time hint.
std::vector<std::string> schedule_warnings(const GttSchedule& schedule, const ValidatedConfig& cfg);

}  // namespace patchdyn
