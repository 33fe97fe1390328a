#include "patchdyn/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace patchdyn {

namespace fs = std::filesystem;

namespace {

std::ostream& log_stream(const CommandOptions& options) {
  return options.log ? *options.log : std::cout;
}

std::ofstream open_output(const CommandOptions& options, const std::string& name) {
  fs::create_directories(options.out_dir);
  const fs::path path = fs::path(options.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw SpecError("cannot write " + path.string());
  return out;
}

void write_timing(const CommandOptions& options, const std::vector<RunRecord>& records) {
  auto out = open_output(options, "timing.csv");
  out << "# wall-clock times; not reproducible across runs\n";
  out << "name,Nt,gtt_count,wall_time\n";
  for (const auto& r : records) {
    out << csv_cell(r.name) << ',' << r.n_macro_steps << ',' << r.report.gtt_count << ','
        << format_number(r.report.wall_time) << '\n';
  }
}

// Fails fast, before anything runs, if any schedule is invalid.
bool preflight(const ExperimentSpec& spec, const CommandOptions& options) {
  const auto problems = validate_experiment(spec);
  for (const auto& p : problems) std::cerr << "spec error: " << p << '\n';
  (void)options;
  return problems.empty();
}

}  // namespace

CoarseField<double> initial_field(const ExperimentSpec& spec, const ValidatedConfig& cfg) {
  if (spec.initial_sampling == InitialSampling::BoxAverage) {
    return box_average_field<double>(cfg, sine_antiderivative);
  }
  return sample_field<double>(cfg, sine_profile);
}

RunRecord run_entry(const ExperimentSpec& spec, const ScheduleSpec& schedule, int nt, int jobs) {
  const ValidatedConfig cfg = require_valid(spec.config_for(nt));
  RunRecord record;
  record.name = schedule.name;
  record.schedule = schedule.build(cfg);
  record.n_macro_steps = nt;
  record.delta_t = cfg.delta_t();

  RunOptions options;
  options.jobs = jobs;
  if (spec.reference == ReferenceKind::Analytic) {
    options.reference = analytic_solution;
  } else if (spec.reference == ReferenceKind::Oracle) {
    OracleOptions oracle;
    oracle.fine_dx = spec.oracle_dx;
    options.reference_series = full_domain_oracle<double>(cfg, spec.problem, cfg.final_time(), oracle);
  }
  record.report = run(initial_field(spec, cfg), record.schedule, spec.problem, cfg, options);
  return record;
}

int cmd_run(const ExperimentSpec& spec, const CommandOptions& options) {
  if (!preflight(spec, options)) return kExitSpecError;
  auto& log = log_stream(options);
  const ValidatedConfig cfg = require_valid(spec.config);

  std::vector<RunRecord> records;
  for (const auto& s : spec.schedules) {
    for (const auto& w : schedule_warnings(s.build(cfg), cfg)) log << "warning: " << s.name << ": " << w << '\n';
    records.push_back(run_entry(spec, s, cfg.n_macro_steps(), options.jobs));
  }

  auto report = open_output(options, spec.output.report);
  write_csv_header(report, "patchdyn run report", spec, cfg);
  report << kRunColumns << '\n';
  for (const auto& r : records) write_run_row(report, r);

  auto errors = open_output(options, spec.output.errors);
  write_csv_header(errors, "patchdyn per-time error profile", spec, cfg);
  errors << "name,Nt,time,max_abs_error,max_abs_reference\n";
  for (const auto& r : records) write_error_rows(errors, r);

  write_timing(options, records);
  write_text_table(log, records);

  bool diverged = false;
  for (const auto& r : records) diverged |= r.report.diverged;
  if (diverged) log << "divergence detected\n";
  return diverged ? kExitDiverged : kExitOk;
}

int cmd_table(const ExperimentSpec& spec, const CommandOptions& options) {
  if (!spec.sweep || (spec.sweep->n_macro_steps.empty() && spec.sweep->schedules.empty())) {
    std::cerr << "spec error: sweep required\n";
    return kExitSpecError;
  }
  if (!preflight(spec, options)) return kExitSpecError;
  auto& log = log_stream(options);
  const ValidatedConfig base = require_valid(spec.config);

  std::vector<int> nts = spec.sweep->n_macro_steps;
  if (nts.empty()) nts.push_back(spec.config.n_macro_steps);
  std::vector<const ScheduleSpec*> chosen;
  if (spec.sweep->schedules.empty()) {
    for (const auto& s : spec.schedules) chosen.push_back(&s);
  } else {
    for (const auto& name : spec.sweep->schedules) chosen.push_back(&spec.schedule(name));
  }

  std::vector<RunRecord> records;
  for (int nt : nts) {
    for (const auto* s : chosen) records.push_back(run_entry(spec, *s, nt, options.jobs));
  }

  auto table = open_output(options, spec.output.table);
  write_csv_header(table, "patchdyn scheme comparison table", spec, base);
  table << kRunColumns << '\n';
  for (const auto& r : records) write_run_row(table, r);

  std::ostringstream text;
  write_text_table(text, records);
  auto text_file = open_output(options, fs::path(spec.output.table).replace_extension(".txt").string());
  text_file << text.str();
  log << text.str();
  write_timing(options, records);

  bool diverged = false;
  for (const auto& r : records) diverged |= r.report.diverged;
  return diverged ? kExitDiverged : kExitOk;
}

int cmd_fields(const ExperimentSpec& spec, const CommandOptions& options) {
  if (!preflight(spec, options)) return kExitSpecError;
  const ValidatedConfig cfg = require_valid(spec.config);
  std::vector<double> times = spec.output.times;
  if (times.empty()) times = {0.01, 0.1, 0.2};
  for (double t : times) {
    if (t < 0.0 || t > cfg.final_time() * (1 + 1e-12)) {
      std::cerr << "spec error: requested time " << t << " lies beyond the final time "
                << cfg.final_time() << '\n';
      return kExitSpecError;
    }
  }
  for (double x : spec.output.probe_x) {
    if (x < cfg.domain_lo() || x > cfg.domain_hi()) {
      std::cerr << "spec error: probe x = " << x << " lies outside the domain\n";
      return kExitSpecError;
    }
  }

  std::vector<RunRecord> records;
  for (const auto& s : spec.schedules) records.push_back(run_entry(spec, s, cfg.n_macro_steps(), options.jobs));

  std::vector<int> steps;
  for (double t : times) steps.push_back(static_cast<int>(std::lround(t / cfg.delta_t())));
  std::vector<int> probe_nodes;
  for (double x : spec.output.probe_x) {
    probe_nodes.push_back(static_cast<int>(std::lround((x - cfg.domain_lo()) / cfg.delta_x())));
  }

  auto fields = open_output(options, spec.output.fields);
  write_csv_header(fields, "patchdyn coarse field snapshots", spec, cfg);
  for (std::size_t i = 0; i < times.size(); ++i) {
    fields << "# requested t = " << format_number(times[i]) << " -> macro step " << steps[i]
           << " at t = " << format_number(steps[i] * cfg.delta_t()) << '\n';
  }
  fields << "x";
  for (std::size_t i = 0; i < times.size(); ++i) {
    const std::string suffix = "@t=" + format_number(steps[i] * cfg.delta_t());
    fields << ",analytic" << suffix;
    for (const auto& r : records) fields << ',' << csv_cell(r.name + suffix);
  }
  fields << '\n';
  for (int j = 0; j <= cfg.n_macro(); ++j) {
    const double x = cfg.node(j);
    fields << format_number(x);
    for (int step : steps) {
      fields << ',' << format_number(analytic_solution(x, step * cfg.delta_t()));
      for (const auto& r : records) fields << ',' << format_number(r.report.snapshots[step].values[j]);
    }
    fields << '\n';
  }

  if (!probe_nodes.empty()) {
    auto probes = open_output(options, spec.output.probes);
    write_csv_header(probes, "patchdyn probe time series", spec, cfg);
    for (std::size_t p = 0; p < probe_nodes.size(); ++p) {
      probes << "# requested x = " << format_number(spec.output.probe_x[p]) << " -> node " << probe_nodes[p]
             << " at x = " << format_number(cfg.node(probe_nodes[p])) << '\n';
    }
    probes << "time";
    for (int node : probe_nodes) {
      const std::string suffix = "@x=" + format_number(cfg.node(node));
      probes << ",analytic" << suffix;
      for (const auto& r : records) probes << ',' << csv_cell(r.name + suffix);
    }
    probes << '\n';
    for (int n = 0; n <= cfg.n_macro_steps(); ++n) {
      const double t = records.front().report.snapshots[n].time;
      probes << format_number(t);
      for (int node : probe_nodes) {
        probes << ',' << format_number(analytic_solution(cfg.node(node), t));
        for (const auto& r : records) probes << ',' << format_number(r.report.snapshots[n].values[node]);
      }
      probes << '\n';
    }
  }

  bool diverged = false;
  for (const auto& r : records) diverged |= r.report.diverged;
  return diverged ? kExitDiverged : kExitOk;
}

int cmd_validate(const ExperimentSpec& spec, const CommandOptions& options) {
  auto& log = log_stream(options);
  const auto problems = validate_experiment(spec);
  for (const auto& p : problems) std::cerr << "spec error: " << p << '\n';
  if (!problems.empty()) return kExitSpecError;

  const ValidatedConfig cfg = require_valid(spec.config);
  log << "config ok: N = " << cfg.n_macro() << ", Nt = " << cfg.n_macro_steps() << ", delta_t = "
      << format_number(cfg.delta_t()) << ", M = " << cfg.micro_intervals() << " micro intervals, "
      << cfg.micro_steps_per_tau() << " micro steps per tau\n";
  for (const auto& s : spec.schedules) {
    const auto schedule = s.build(cfg);
    log << "schedule " << s.name << ": " << schedule.fingerprint() << " (" << schedule.gtts_per_step()
        << " GTTs, " << schedule.extrapolations_per_step() << " extrapolations per macro step)\n";
    for (const auto& w : schedule_warnings(schedule, cfg)) log << "warning: " << s.name << ": " << w << '\n';
  }
  return kExitOk;
}

}  // namespace patchdyn
