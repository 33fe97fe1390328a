#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "patchdyn/experiment_spec.hpp"
#include "patchdyn/integrator.hpp"

namespace patchdyn {

/// 17 significant digits, so equal doubles print equal and vice versa.
std::string format_number(double value);

/// Quotes a CSV cell when it contains a comma, quote or space.
std::string csv_cell(const std::string& text);

/// The `#`-prefixed block at the top of every CSV: all configuration values,
/// the snapped micro grid and the error normalization convention.
void write_csv_header(std::ostream& os, const std::string& title, const ExperimentSpec& spec,
                      const ValidatedConfig& cfg);

/// One finished simulation, as reported by the CLI.
struct RunRecord {
  std::string name;
  GttSchedule schedule;
  int n_macro_steps = 0;
  double delta_t = 0.0;
  RunReport report;
};

extern const char* const kRunColumns;

/// Report/table row: distribution, kind, Nt, counts, span, both error
/// normalizations, divergence, schedule fingerprint. No timings, so output is
/// reproducible byte for byte.
void write_run_row(std::ostream& os, const RunRecord& record);

/// Per-snapshot error profile rows: name, Nt, time, max_abs_error, max_abs_reference.
void write_error_rows(std::ostream& os, const RunRecord& record);

/// Aligned text table including wall times, for terminals and logs.
void write_text_table(std::ostream& os, const std::vector<RunRecord>& records);

}  // namespace patchdyn
