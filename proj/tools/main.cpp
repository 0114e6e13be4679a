// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
//
// Experiment runner: single runs, scheme comparisons, knob sweeps, and
// attack evaluations, driven by flat key=value config files.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conchain/report.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool event_log = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory (default from config)");
  cmd->add_option("--format", args.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", args.seed,
                  "override workload, engine, and attack seeds");
  cmd->add_flag("--event-log", args.event_log, "export engine event logs");
}

conchain::ExperimentConfig load_config(const CommonArgs& args) {
  conchain::ExperimentConfig config =
      conchain::parse_config_file(args.config_path);
  if (!args.out_dir.empty()) config.output.path = args.out_dir;
  if (!args.format.empty()) config.output.format = args.format;
  if (args.seed) {
    config.workload.seed = *args.seed;
    config.engine.seed = *args.seed;
    if (config.attack) config.attack->seed = *args.seed;
  }
  if (config.attack) config.attack->honest = config.workload;
  if (args.event_log) config.event_log = true;
  return config;
}

void print_files(const std::vector<std::string>& files) {
  for (const std::string& file : files) std::cout << "wrote " << file << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conchain: ordering-scheme simulator and attack testbed"};
  app.require_subcommand(1);

  CommonArgs run_args, compare_args, sweep_args, attack_args;
  CLI::App* run = app.add_subcommand("run", "run each scheme on one workload");
  add_common(run, run_args);
  CLI::App* compare =
      app.add_subcommand("compare", "comparison table across schemes");
  add_common(compare, compare_args);
  CLI::App* sweep = app.add_subcommand("sweep", "sweep a workload knob");
  add_common(sweep, sweep_args);
  CLI::App* attack =
      app.add_subcommand("attack", "defended vs undefended attack arms");
  add_common(attack, attack_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      print_files(conchain::cmd_run(load_config(run_args)));
    } else if (compare->parsed()) {
      print_files(conchain::cmd_compare(load_config(compare_args)));
    } else if (sweep->parsed()) {
      print_files(conchain::cmd_sweep(load_config(sweep_args)));
    } else if (attack->parsed()) {
      std::string verdict;
      print_files(conchain::cmd_attack(load_config(attack_args), &verdict));
      std::cout << verdict << "\n";
    }
  } catch (const conchain::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
