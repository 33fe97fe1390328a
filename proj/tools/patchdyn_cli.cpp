// patchdyn: run patch dynamics experiments described by a spec document.
//
//   patchdyn run      --spec experiment.ini --out results/
//   patchdyn table    --spec table1.ini --out results/ --micro-scale coarse
//   patchdyn fields   --spec figures.ini --out results/
//   patchdyn validate --spec experiment.ini

#include <CLI11.hpp>

#include <iostream>

#include "patchdyn/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Gap-tooth patch dynamics (UPD, GPD type I and II) experiment driver"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir = ".";
  std::string micro_scale;
  int jobs = 1;
  long seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", spec_path, "Spec document (INI-style)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--micro-scale", micro_scale, "Override the micro grid with a preset")
        ->check(CLI::IsMember({"paper", "coarse"}));
    sub->add_option("--jobs", jobs, "Worker threads per gap-tooth step")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "Reserved; the benchmark is deterministic");
  };
  auto* run_cmd = app.add_subcommand("run", "Run every schedule once and write a report");
  auto* table_cmd = app.add_subcommand("table", "Cross the sweep's Nt values with its schedules");
  auto* fields_cmd = app.add_subcommand("fields", "Write field snapshots and probe time series");
  auto* validate_cmd = app.add_subcommand("validate", "Check the spec without running anything");
  for (auto* sub : {run_cmd, table_cmd, fields_cmd, validate_cmd}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : patchdyn::kExitSpecError;
  }

  try {
    auto spec = patchdyn::load_experiment_spec(spec_path);
    if (!micro_scale.empty()) patchdyn::apply_micro_scale(spec, micro_scale);
    patchdyn::CommandOptions options;
    options.out_dir = out_dir;
    options.jobs = jobs;

    if (*run_cmd) return patchdyn::cmd_run(spec, options);
    if (*table_cmd) return patchdyn::cmd_table(spec, options);
    if (*fields_cmd) return patchdyn::cmd_fields(spec, options);
    return patchdyn::cmd_validate(spec, options);
  } catch (const patchdyn::SpecError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return patchdyn::kExitSpecError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return patchdyn::kExitSpecError;
  }
}
