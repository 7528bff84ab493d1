/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cli/runner.hpp"
#include "cli/svg.hpp"

namespace xdiff::cli {

namespace fs = std::filesystem;
using nlohmann::json;

int cmd_run(const RunCommandArgs& args) {
  std::optional<ConfigFile> cfg;
  if (!args.config_path.empty()) cfg = ConfigFile::parse_file(args.config_path);
  envsim::ScenarioOptions opt;
  opt.demand_shift_slot = args.demand_shift_slot;
  const envsim::Scenario sc = scenario_from_config(args.preset, cfg, opt);
  const agent::LearnerConfig lc = learner_config_for(sc, cfg);

  RunOptions ro;
  ro.provider = args.provider;
  ro.slots = args.slots;
  ro.seed = args.first_seed;
  ro.latency_coupling = args.latency_coupling;
  ro.checkpoint_every_slots = args.checkpoint_every;

  const auto sums = run_batch(sc, lc, ro, args.seeds, args.out_dir);
  double mr = 0.0;
  for (const RunSummary& s : sums) mr += s.mean_reward;
  std::cout << "run: provider=" << args.provider << " seeds=" << args.seeds
            << " slots=" << args.slots << " mean_reward=" << mr / sums.size()
            << " out=" << args.out_dir << "\n";
  return 0;
}

namespace {

struct RunDirData {
  std::string provider;
  json summary;
  std::vector<double> reward_slots;  // slot-mean reward, first seed
  std::vector<double> delays;        // per-UE slot delays pooled over seeds
  std::vector<double> tps;
};

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

RunDirData load_run_dir(const std::string& dir) {
  RunDirData d;
  std::ifstream sfile(dir + "/summary.json");
  if (!sfile) throw ConfigError("compare: run directory not found or missing summary: " + dir);
  sfile >> d.summary;
  d.provider = d.summary.value("provider", std::string("unknown"));

  bool first_seed = true;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    const std::string trace_path = entry.path().string() + "/trace.csv";
    std::ifstream tf(trace_path);
    if (!tf) continue;
    std::string line;
    std::getline(tf, line);  // header
    int last_slot = -1;
    while (std::getline(tf, line)) {
      const auto f = csv_fields(line);
      if (f.size() < 13) continue;
      const int slot = std::stoi(f[0]);
      const double tp = std::stod(f[4]);
      const double delay = std::stod(f[5]);
      const double reward = std::stod(f[11]);
      d.delays.push_back(delay);
      d.tps.push_back(tp);
      if (first_seed && slot != last_slot) {
        d.reward_slots.push_back(reward);
        last_slot = slot;
      }
    }
    first_seed = false;
  }
  return d;
}

}  // namespace

int cmd_compare(const CompareCommandArgs& args) {
  std::vector<RunDirData> runs;
  for (const std::string& dir : args.run_dirs) runs.push_back(load_run_dir(dir));
  fs::create_directories(args.out_dir);

  // Ranking on mean reward, independent of input order.
  std::vector<size_t> order(runs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const double ra = runs[a].summary.value("mean_reward", 0.0);
    const double rb = runs[b].summary.value("mean_reward", 0.0);
    if (ra != rb) return ra > rb;
    return runs[a].provider < runs[b].provider;
  });

  json cmp;
  cmp["schema_version"] = 1;
  json ranking = json::array();
  for (size_t i : order) {
    json e;
    e["provider"] = runs[i].provider;
    e["mean_reward"] = runs[i].summary.value("mean_reward", 0.0);
    e["mean_delay_ms"] = runs[i].summary.value("mean_delay_ms", 0.0);
    e["mean_tp_bps"] = runs[i].summary.value("mean_tp_bps", 0.0);
    e["mean_bler"] = runs[i].summary.value("mean_bler", 0.0);
    ranking.push_back(e);
  }
  cmp["ranking"] = ranking;
  std::ofstream(args.out_dir + "/comparison.json") << cmp.dump(2) << "\n";

  std::vector<Series> reward_series;
  std::vector<std::pair<std::string, std::vector<double>>> delay_cdf, tp_cdf;
  for (const RunDirData& r : runs) {
    Series s;
    s.label = r.provider;
    for (size_t i = 0; i < r.reward_slots.size(); ++i) {
      s.x.push_back(static_cast<double>(i));
      s.y.push_back(r.reward_slots[i]);
    }
    reward_series.push_back(std::move(s));
    delay_cdf.emplace_back(r.provider, r.delays);
    tp_cdf.emplace_back(r.provider, r.tps);
  }
  write_line_chart(args.out_dir + "/reward_timeseries.svg", "Slot reward", "slot",
                   "reward", reward_series);
  write_cdf_chart(args.out_dir + "/delay_cdf.svg", "Per-UE slot delay", "delay (ms)",
                  delay_cdf);
  write_cdf_chart(args.out_dir + "/throughput_cdf.svg", "Per-UE slot throughput",
                  "throughput (bps)", tp_cdf);

  std::cout << "compare: " << runs.size() << " runs -> " << args.out_dir << "\n";
  return 0;
}

int cmd_sweep(const SweepCommandArgs& args) {
  if (args.values.empty()) throw ConfigError("sweep: empty value list");
  if (args.parameter != "K" && args.parameter != "eta")
    throw ConfigError("sweep: parameter must be K or eta");

  std::optional<ConfigFile> cfg;
  if (!args.config_path.empty()) cfg = ConfigFile::parse_file(args.config_path);
  const envsim::Scenario sc = scenario_from_config(args.preset, cfg, {});

  json report;
  report["parameter"] = args.parameter;
  json points = json::array();
  std::vector<Series> chart{{args.parameter, {}, {}}};
  for (double v : args.values) {
    agent::LearnerConfig lc = learner_config_for(sc, cfg);
    if (args.parameter == "K")
      lc.denoise_steps = static_cast<int>(v);
    else
      lc.eta = static_cast<float>(v);

    RunOptions ro;
    ro.provider = "xdiff";
    ro.slots = args.slots;
    ro.seed = args.first_seed;
    ro.latency_coupling = args.latency_coupling;
    std::ostringstream dir;
    dir << args.out_dir << "/" << args.parameter << "_" << v;
    const auto sums = run_batch(sc, lc, ro, args.seeds, dir.str());

    std::vector<double> finals;
    for (const RunSummary& s : sums) finals.push_back(s.mean_reward_last_third);
    const double median = percentile(finals, 50.0);
    json p;
    p["value"] = v;
    p["median_final_third_reward"] = median;
    p["per_seed"] = finals;
    points.push_back(p);
    chart[0].x.push_back(v);
    chart[0].y.push_back(median);
    std::cout << "sweep " << args.parameter << "=" << v << " median reward " << median
              << "\n";
  }
  report["points"] = points;
  fs::create_directories(args.out_dir);
  std::ofstream(args.out_dir + "/sweep.json") << report.dump(2) << "\n";
  write_line_chart(args.out_dir + "/sweep.svg", "Reward vs " + args.parameter,
                   args.parameter, "median final-third reward", chart);
  return 0;
}

}  // namespace xdiff::cli
