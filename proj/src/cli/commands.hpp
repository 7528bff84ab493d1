/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

namespace xdiff::cli {

struct RunCommandArgs {
  std::string preset;       // lab | building | "" (config-only)
  std::string config_path;  // optional overrides
  std::string provider = "xdiff";
  int seeds = 1;
  uint64_t first_seed = 1;
  int slots = 1000;
  std::string out_dir = "runs/out";
  bool latency_coupling = false;
  int demand_shift_slot = -1;
  int checkpoint_every = 0;
};

int cmd_run(const RunCommandArgs& args);

struct CompareCommandArgs {
  std::vector<std::string> run_dirs;
  std::string out_dir = "runs/compare";
};

int cmd_compare(const CompareCommandArgs& args);

struct SweepCommandArgs {
  std::string parameter;  // "K" | "eta"
  std::vector<double> values;
  std::string preset = "lab";
  std::string config_path;
  int seeds = 3;
  uint64_t first_seed = 1;
  int slots = 1000;
  std::string out_dir = "runs/sweep";
  bool latency_coupling = true;
};

int cmd_sweep(const SweepCommandArgs& args);

}  // namespace xdiff::cli
