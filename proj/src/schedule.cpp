#include "patchdyn/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace patchdyn {

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::UPD: return "UPD";
    case ScheduleKind::GPD_I: return "GPD_I";
    case ScheduleKind::GPD_II: return "GPD_II";
  }
  return "UPD";
}

ScheduleKind parse_schedule_kind(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  std::replace(t.begin(), t.end(), '-', '_');
  if (t == "UPD") return ScheduleKind::UPD;
  if (t == "GPD_I" || t == "GPD1" || t == "TYPE_I") return ScheduleKind::GPD_I;
  if (t == "GPD_II" || t == "GPD2" || t == "TYPE_II") return ScheduleKind::GPD_II;
  throw std::invalid_argument("unknown schedule kind '" + text + "'");
}

int GttSchedule::extrapolations_per_step() const {
  return static_cast<int>(std::count_if(groups.begin(), groups.end(),
                                        [](const GttGroup& g) { return g.extrapolates; }));
}

int GttSchedule::gtts_per_step() const { return k_total + extrapolations_per_step(); }

double GttSchedule::total_span() const {
  double sum = 0.0;
  for (const auto& g : groups) sum += g.span;
  return sum;
}

std::vector<int> GttSchedule::k_list() const {
  std::vector<int> out;
  for (const auto& g : groups) out.push_back(g.gtts);
  return out;
}

std::vector<double> GttSchedule::t_list() const {
  std::vector<double> out;
  for (const auto& g : groups) {
    if (g.extrapolates) out.push_back(g.span);
  }
  return out;
}

std::string GttSchedule::distribution() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < groups.size(); ++i) os << (i ? ", " : "") << groups[i].gtts;
  os << '}';
  return os.str();
}

std::string GttSchedule::fingerprint() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind) << " k=[";
  for (std::size_t i = 0; i < groups.size(); ++i) os << (i ? " " : "") << groups[i].gtts;
  os << "] t=[";
  const auto spans = t_list();
  for (std::size_t i = 0; i < spans.size(); ++i) os << (i ? " " : "") << spans[i];
  os << ']';
  return os.str();
}

namespace {

double span_budget(int k, const ValidatedConfig& cfg) {
  const double budget = cfg.delta_t() - k * cfg.tau();
  if (!(budget > 0.0)) {
    throw ScheduleError(ScheduleErrorKind::InvalidSplit, "k * tau must be smaller than delta_t");
  }
  return budget;
}

}  // namespace

GttSchedule make_uniform_schedule(ScheduleKind kind, int k, int l, const ValidatedConfig& cfg) {
  if (k < 1 || l < 1) throw ScheduleError(ScheduleErrorKind::InvalidSplit, "k and l must be positive");
  if (l > k) throw ScheduleError(ScheduleErrorKind::InvalidSplit, "more groups than GTTs (l > k)");
  if (kind == ScheduleKind::UPD && l != 1) {
    throw ScheduleError(ScheduleErrorKind::InvalidSplit, "UPD uses a single group");
  }
  if (kind == ScheduleKind::GPD_II && l < 2) {
    throw ScheduleError(ScheduleErrorKind::InvalidSplit, "GPD_II needs at least two groups");
  }
  const double budget = span_budget(k, cfg);
  const int spans = kind == ScheduleKind::GPD_II ? l - 1 : l;

  GttSchedule s;
  s.kind = kind;
  s.k_total = k;
  const int base = k / l;
  const int extra = k % l;
  for (int i = 0; i < l; ++i) {
    GttGroup g;
    g.gtts = base + (i < extra ? 1 : 0);
    g.extrapolates = i < spans;
    g.span = g.extrapolates ? budget / spans : 0.0;
    s.groups.push_back(g);
  }
  return s;
}

GttSchedule make_custom_schedule(ScheduleKind kind, const std::vector<int>& k_list,
                                 const std::vector<double>& t_fractions, const ValidatedConfig& cfg) {
  if (k_list.empty()) throw ScheduleError(ScheduleErrorKind::ArityMismatch, "k_list is empty");
  const std::size_t expected_spans = kind == ScheduleKind::GPD_II ? k_list.size() - 1 : k_list.size();
  if (kind == ScheduleKind::UPD && k_list.size() != 1) {
    throw ScheduleError(ScheduleErrorKind::ArityMismatch, "UPD uses a single group");
  }
  if (t_fractions.size() != expected_spans) {
    std::ostringstream os;
    os << to_string(kind) << " with " << k_list.size() << " groups needs " << expected_spans
       << " span fractions, got " << t_fractions.size();
    throw ScheduleError(ScheduleErrorKind::ArityMismatch, os.str());
  }
  for (int k : k_list) {
    if (k < 1) throw ScheduleError(ScheduleErrorKind::InvalidSplit, "every group needs at least one GTT");
  }
  for (double f : t_fractions) {
    if (f < 0.0 || !std::isfinite(f)) {
      throw ScheduleError(ScheduleErrorKind::NegativeSpan, "span fractions must be non-negative");
    }
  }
  const double fraction_sum = std::accumulate(t_fractions.begin(), t_fractions.end(), 0.0);
  if (expected_spans > 0 && std::abs(fraction_sum - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "span fractions sum to " << fraction_sum << ", expected 1";
    throw ScheduleError(ScheduleErrorKind::BudgetMismatch, os.str());
  }

  const int k = std::accumulate(k_list.begin(), k_list.end(), 0);
  const double budget = span_budget(k, cfg);
  if (expected_spans == 0) {
    throw ScheduleError(ScheduleErrorKind::BudgetMismatch, "no span left to absorb delta_t - k tau");
  }

  GttSchedule s;
  s.kind = kind;
  s.k_total = k;
  for (std::size_t i = 0; i < k_list.size(); ++i) {
    GttGroup g;
    g.gtts = k_list[i];
    g.extrapolates = i < expected_spans;
    g.span = g.extrapolates ? t_fractions[i] * budget : 0.0;
    s.groups.push_back(g);
  }
  return s;
}

void check_schedule(const GttSchedule& schedule, const ValidatedConfig& cfg) {
  if (schedule.groups.empty()) throw ScheduleError(ScheduleErrorKind::ArityMismatch, "no groups");
  int k = 0;
  for (const auto& g : schedule.groups) {
    if (g.gtts < 1) throw ScheduleError(ScheduleErrorKind::InvalidSplit, "empty GTT group");
    if (g.span < 0.0) throw ScheduleError(ScheduleErrorKind::NegativeSpan, "negative span");
    k += g.gtts;
  }
  if (k != schedule.k_total) throw ScheduleError(ScheduleErrorKind::InvalidSplit, "k_total mismatch");

  const std::size_t l = schedule.groups.size();
  for (std::size_t i = 0; i < l; ++i) {
    const bool should = schedule.kind != ScheduleKind::GPD_II || i + 1 < l;
    if (schedule.groups[i].extrapolates != should) {
      throw ScheduleError(ScheduleErrorKind::ArityMismatch, "extrapolation pattern does not match kind");
    }
  }
  if (schedule.kind == ScheduleKind::UPD && l != 1) {
    throw ScheduleError(ScheduleErrorKind::ArityMismatch, "UPD uses a single group");
  }
  const double budget = cfg.delta_t() - k * cfg.tau();
  if (std::abs(schedule.total_span() - budget) > 1e-12 * cfg.delta_t()) {
    throw ScheduleError(ScheduleErrorKind::BudgetMismatch, "spans do not add up to delta_t - k tau");
  }
}

std::vector<std::string> schedule_warnings(const GttSchedule& schedule, const ValidatedConfig& cfg) {
  std::vector<std::string> out;
  const auto hint = cfg.relaxation_time_hint();
  if (!hint) return out;
  int smallest = schedule.k_total;
  for (const auto& g : schedule.groups) smallest = std::min(smallest, g.gtts);
  if (*hint >= smallest * cfg.tau()) {
    std::ostringstream os;
    os << "group of " << smallest << " GTTs spans " << smallest * cfg.tau()
       << ", not longer than the relaxation time " << *hint;
    out.push_back(os.str());
  }
  return out;
}

}  // namespace patchdyn
