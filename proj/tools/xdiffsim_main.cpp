/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "core/types.hpp"

int main(int argc, char** argv) {
  CLI::App app{"xdiffsim: multi-cell O-RAN interference-management experiments"};
  app.require_subcommand(1);

  xdiff::cli::RunCommandArgs run_args;
  CLI::App* run = app.add_subcommand("run", "simulate one provider over seeded runs");
  run->add_option("--preset", run_args.preset, "scenario preset")
      ->check(CLI::IsMember({"lab", "building"}));
  run->add_option("--config", run_args.config_path, "config file with overrides");
  run->add_option("--provider", run_args.provider, "policy provider")
      ->check(CLI::IsMember(
          {"xdiff", "xdiff-hard", "ddqn", "ddpg", "cira", "otfr", "csrs"}));
  run->add_option("--seeds", run_args.seeds, "number of seeds")->default_val(1);
  run->add_option("--first-seed", run_args.first_seed, "first seed value")
      ->default_val(1);
  run->add_option("--slots", run_args.slots, "slots per run")->default_val(1000);
  run->add_option("--out", run_args.out_dir, "output directory")->required();
  std::string coupling = "off";
  run->add_option("--latency-coupling", coupling,
                  "model policy-generation wall clock as E2 staleness (on|off)")
      ->check(CLI::IsMember({"on", "off"}));
  run->add_option("--demand-shift-slot", run_args.demand_shift_slot,
                  "slot at which the load pattern rotates (-1 = never)")
      ->default_val(-1);
  run->add_option("--checkpoint-every", run_args.checkpoint_every,
                  "checkpoint period in slots (0 = final only)")
      ->default_val(0);

  xdiff::cli::CompareCommandArgs cmp_args;
  CLI::App* cmp = app.add_subcommand("compare", "compare finished run directories");
  cmp->add_option("dirs", cmp_args.run_dirs, "run directories")->required();
  cmp->add_option("--out", cmp_args.out_dir, "output directory")->required();

  xdiff::cli::SweepCommandArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "hyperparameter sweep for xdiff");
  sweep->add_option("--param", sweep_args.parameter, "K or eta")->required();
  sweep->add_option("--values", sweep_args.values, "grid values")->required();
  sweep->add_option("--preset", sweep_args.preset, "scenario preset")
      ->check(CLI::IsMember({"lab", "building"}))
      ->default_val("lab");
  sweep->add_option("--config", sweep_args.config_path, "config file with overrides");
  sweep->add_option("--seeds", sweep_args.seeds, "seeds per grid point")
      ->default_val(3);
  sweep->add_option("--slots", sweep_args.slots, "slots per run")->default_val(1000);
  sweep->add_option("--out", sweep_args.out_dir, "output directory")->required();
  std::string sweep_coupling = "on";
  sweep->add_option("--latency-coupling", sweep_coupling, "on|off")
      ->check(CLI::IsMember({"on", "off"}));

  try {
    app.parse(argc, argv);
    if (run->parsed()) {
      run_args.latency_coupling = coupling == "on";
      return xdiff::cli::cmd_run(run_args);
    }
    if (cmp->parsed()) return xdiff::cli::cmd_compare(cmp_args);
    if (sweep->parsed()) {
      sweep_args.latency_coupling = sweep_coupling == "on";
      return xdiff::cli::cmd_sweep(sweep_args);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const xdiff::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
