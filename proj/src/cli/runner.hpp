/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

#include "baselines/provider.hpp"
#include "cli/config_file.hpp"
#include "env/scenario.hpp"

namespace xdiff::cli {

struct RunOptions {
  std::string provider = "xdiff";
  int slots = 1000;
  uint64_t seed = 1;
  /// Measured policy-generation wall clock is rounded up to whole subframes
  /// of extra E2 staleness when enabled.
  bool latency_coupling = false;
  /// Output directory for this seed; empty keeps everything in memory.
  std::string out_dir;
  int checkpoint_every_slots = 0;  // 0 = final checkpoint only
};

/// Deterministic per-run outcome (no wall-clock data; latency statistics are
/// reported separately).
struct RunSummary {
  std::string provider;
  uint64_t seed = 0;
  int slots = 0;
  double mean_reward = 0.0;
  double mean_reward_last_third = 0.0;
  double mean_tp_bps = 0.0;
  double mean_delay_ms = 0.0;
  double p50_delay_ms = 0.0;
  double p90_delay_ms = 0.0;
  double mean_bler = 0.0;
  long bytes_in = 0;
  long bytes_delivered = 0;
  long bytes_dropped = 0;
  bool conservation_ok = false;
  std::vector<double> reward_per_slot;
  std::vector<double> per_ue_mean_tp_bps;
  std::vector<double> per_ue_mean_delay_ms;
  /// Wall-clock act() latencies (non-deterministic; excluded from
  /// summary.json and reported in latency.json).
  std::vector<double> act_latencies_ms;
};

double percentile(std::vector<double> v, double p);

/// Runs one (scenario, provider, seed) episode; writes trace.csv,
/// metrics.csv, summary.json, latency.json and checkpoint.bin into
/// opt.out_dir when set.
RunSummary run_single(const envsim::Scenario& sc, const agent::LearnerConfig& lc,
                      const RunOptions& opt);

/// Batch entry point backing `run`: one subdirectory per seed plus an
/// aggregate summary.json and the resolved config echo.
std::vector<RunSummary> run_batch(const envsim::Scenario& sc,
                                  const agent::LearnerConfig& lc, RunOptions opt,
                                  int num_seeds, const std::string& out_dir);

void write_summary_json(const RunSummary& s, const std::string& path);

}  // namespace xdiff::cli
