#include "patchdyn/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace patchdyn {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << value;
  return os.str();
}

std::string csv_cell(const std::string& text) {
  if (text.find_first_of(",\" ") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_csv_header(std::ostream& os, const std::string& title, const ExperimentSpec& spec,
                      const ValidatedConfig& cfg) {
  const MacroConfig& c = cfg.raw();
  os << "# " << title << '\n';
  os << "# domain = [" << format_number(c.domain_lo) << ", " << format_number(c.domain_hi) << "]\n";
  os << "# delta_x = " << format_number(c.delta_x) << '\n';
  os << "# n_macro = " << c.n_macro << '\n';
  os << "# final_time = " << format_number(spec.final_time) << '\n';
  os << "# delta_t = " << format_number(c.delta_t) << " (n_macro_steps = " << c.n_macro_steps
     << "; sweeps use final_time / Nt)\n";
  os << "# patch_width = " << format_number(c.patch_width) << '\n';
  os << "# tau = " << format_number(c.tau) << '\n';
  os << "# micro_dx = " << format_number(c.micro_dx) << " snapped to " << format_number(cfg.micro_dx())
     << " (" << cfg.micro_intervals() << " intervals)\n";
  os << "# micro_dt = " << format_number(c.micro_dt) << " snapped to " << format_number(cfg.micro_dt())
     << " (" << cfg.micro_steps_per_tau() << " steps per tau)\n";
  os << "# poly_degree = " << c.poly_degree << '\n';
  os << "# interpolation = " << to_string(c.interpolation) << '\n';
  os << "# macro_pde_order = " << c.macro_pde_order << '\n';
  if (c.relaxation_time_hint) {
    os << "# relaxation_time_hint = " << format_number(*c.relaxation_time_hint) << '\n';
  }
  os << "# boundary = (" << format_number(c.boundary_left) << ", " << format_number(c.boundary_right)
     << ")\n";
  os << "# problem: u_t = " << format_number(spec.problem.diffusivity) << " u_xx + "
     << format_number(spec.problem.reaction_coefficient) << " u\n";
  os << "# initial_sampling = " << (spec.initial_sampling == InitialSampling::Point ? "point" : "box_average")
     << '\n';
  os << "# reference = " << to_string(spec.reference);
  if (spec.reference == ReferenceKind::Oracle) os << " (fine dx = " << format_number(spec.oracle_dx) << ")";
  os << '\n';
  os << "# error_global = 100 * max_{n,j} |U_j^n - Uref_j^n| / max_{n,j} |Uref_j^n|"
        " (interior nodes, macro step boundaries)\n";
  os << "# error_per_time = 100 * max_n [ max_j |U_j^n - Uref_j^n| / max_j |Uref_j^n| ]\n";
  os << "# divergence: any non-finite entry or |U| > " << format_number(kDivergenceThreshold) << '\n';
}

const char* const kRunColumns =
    "name,distribution,kind,Nt,delta_t,gtt_count,extrapolation_count,span_per_extrapolation,"
    "max_pct_error_global,max_pct_error_per_time,diverged,divergence_time,fingerprint";

void write_run_row(std::ostream& os, const RunRecord& record) {
  const auto& s = record.schedule;
  const auto spans = s.t_list();
  std::string span_cell;
  if (spans.empty()) {
    span_cell = "0";
  } else {
    bool uniform = true;
    for (double t : spans) uniform &= t == spans.front();
    span_cell = uniform ? format_number(spans.front()) : "variable";
  }
  const auto& r = record.report;
  const double global = r.errors ? r.errors->global_percent : std::nan("");
  const double per_time = r.errors ? r.errors->per_time_percent : std::nan("");
  os << csv_cell(record.name) << ',' << csv_cell(s.distribution()) << ',' << to_string(s.kind) << ','
     << record.n_macro_steps << ',' << format_number(record.delta_t) << ',' << r.gtt_count << ','
     << r.extrapolation_count << ',' << span_cell << ',' << format_number(global) << ','
     << format_number(per_time) << ',' << (r.diverged ? "true" : "false") << ','
     << (r.divergence_time ? format_number(*r.divergence_time) : "") << ','
     << csv_cell(s.fingerprint()) << '\n';
}

void write_error_rows(std::ostream& os, const RunRecord& record) {
  if (!record.report.errors) return;
  const auto& e = *record.report.errors;
  for (std::size_t n = 0; n < e.times.size(); ++n) {
    os << csv_cell(record.name) << ',' << record.n_macro_steps << ',' << format_number(e.times[n]) << ','
       << format_number(e.max_abs_error[n]) << ',' << format_number(e.max_abs_reference[n]) << '\n';
  }
}

void write_text_table(std::ostream& os, const std::vector<RunRecord>& records) {
  os << std::left << std::setw(14) << "name" << std::setw(26) << "distribution" << std::setw(8) << "kind"
     << std::right << std::setw(6) << "Nt" << std::setw(9) << "GTTs" << std::setw(8) << "extrap"
     << std::setw(14) << "span" << std::setw(12) << "%err(glob)" << std::setw(12) << "%err(time)"
     << std::setw(11) << "wall[s]" << std::setw(10) << "diverged" << '\n';
  for (const auto& rec : records) {
    const auto& r = rec.report;
    const auto spans = rec.schedule.t_list();
    std::ostringstream span;
    span << std::setprecision(5) << (spans.empty() ? 0.0 : spans.front());
    std::ostringstream glob;
    std::ostringstream per;
    glob << std::fixed << std::setprecision(4) << r.max_percent_error();
    per << std::fixed << std::setprecision(4)
        << (r.errors ? r.errors->per_time_percent : std::nan(""));
    std::ostringstream wall;
    wall << std::fixed << std::setprecision(2) << r.wall_time;
    os << std::left << std::setw(14) << rec.name << std::setw(26) << rec.schedule.distribution()
       << std::setw(8) << to_string(rec.schedule.kind) << std::right << std::setw(6) << rec.n_macro_steps
       << std::setw(9) << r.gtt_count << std::setw(8) << r.extrapolation_count << std::setw(14)
       << span.str() << std::setw(12) << glob.str() << std::setw(12) << per.str() << std::setw(11)
       << wall.str() << std::setw(10) << (r.diverged ? "yes" : "no") << '\n';
  }
}

}  // namespace patchdyn
