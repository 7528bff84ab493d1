/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cli/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace xdiff::cli {

namespace fs = std::filesystem;
using nlohmann::json;

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = p / 100.0 * (v.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - lo;
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

namespace {

constexpr const char* kTraceHeader =
    "slot,time_ms,cell,ue,tp_bps,delay_ms,bler,prbs,mcs,r_tp,r_delay,reward_total,"
    "disconnected\n";
constexpr const char* kMetricsHeader =
    "iteration,slot,trained,critic_loss,denoise_loss,guidance,mean_q,reward,act_ms\n";

}  // namespace

RunSummary run_single(const envsim::Scenario& sc, const agent::LearnerConfig& lc,
                      const RunOptions& opt) {
  agent::LearnerConfig lcs = lc;
  lcs.seed = opt.seed;
  envsim::World world = envsim::make_world(sc, opt.seed);
  auto provider =
      baselines::make_provider(opt.provider, sc.cfg, sc.profiles, lcs);

  envsim::EnvParams ep = sc.env;
  if (provider->wants_hard_allocator() && !ep.hard_allocator) {
    // Rebuild with the hard DU allocator for hard-policy providers.
    ep.hard_allocator = true;
    envsim::Scenario sc2 = sc;
    sc2.env = ep;
    world = envsim::make_world(sc2, opt.seed);
  }

  std::FILE* trace = nullptr;
  std::FILE* metrics = nullptr;
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    trace = std::fopen((opt.out_dir + "/trace.csv").c_str(), "w");
    metrics = std::fopen((opt.out_dir + "/metrics.csv").c_str(), "w");
    if (!trace || !metrics) throw std::runtime_error("cannot open output files");
    std::fputs(kTraceHeader, trace);
    std::fputs(kMetricsHeader, metrics);
  }

  RunSummary sum;
  sum.provider = opt.provider;
  sum.seed = opt.seed;
  sum.slots = opt.slots;
  sum.per_ue_mean_tp_bps.assign(sc.cfg.total_ues(), 0.0);
  sum.per_ue_mean_delay_ms.assign(sc.cfg.total_ues(), 0.0);
  std::vector<double> delays;
  delays.reserve(static_cast<size_t>(opt.slots) * sc.cfg.total_ues());
  double bler_sum = 0.0;

  provider->observe(envsim::SlotObservation(sc.cfg.total_ues()), std::nullopt);

  for (int slot = 0; slot < opt.slots; ++slot) {
    const auto t0 = std::chrono::steady_clock::now();
    PreferencePolicy policy = provider->propose();
    const auto t1 = std::chrono::steady_clock::now();
    double staleness_ms = 0.0;
    if (opt.latency_coupling) {
      const double gen_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      staleness_ms = std::ceil(gen_ms / sc.cfg.subframe_ms) * sc.cfg.subframe_ms;
    }
    const envsim::SlotResult res = world.step_slot(policy, staleness_ms);

    sum.reward_per_slot.push_back(res.reward.total);
    for (int u = 0; u < sc.cfg.total_ues(); ++u) {
      const envsim::UeSlotStats& st = res.ue_stats[u];
      sum.per_ue_mean_tp_bps[u] += st.tp_bps;
      sum.per_ue_mean_delay_ms[u] += st.delay_ms;
      delays.push_back(st.delay_ms);
      bler_sum += st.bler;
      if (trace) {
        const int cell = sc.profiles[u].cell_id;
        std::fprintf(trace, "%d,%.1f,%d,%d,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%d\n",
                     slot, world.now_ms() - sc.cfg.slot_ms, cell, u, st.tp_bps,
                     st.delay_ms, st.bler, st.mean_prbs, st.mean_mcs,
                     res.reward.r_tp[cell], res.reward.r_delay[cell],
                     res.reward.total, st.disconnected ? 1 : 0);
      }
    }

    provider->observe(res.obs, res.reward);
    if (metrics) {
      if (const auto m = provider->metrics()) {
        std::fprintf(metrics, "%ld,%d,%d,%.6g,%.6g,%.6g,%.6g,%.6g,%.4f\n",
                     m->iteration, slot, m->trained ? 1 : 0, m->critic_loss,
                     m->denoise_loss, m->guidance, m->mean_q, m->reward, m->act_ms);
      }
    }
    if (opt.checkpoint_every_slots > 0 && !opt.out_dir.empty() &&
        (slot + 1) % opt.checkpoint_every_slots == 0)
      provider->save_checkpoint(opt.out_dir + "/checkpoint.bin");
  }

  const double n_slots = std::max(1, opt.slots);
  for (int u = 0; u < sc.cfg.total_ues(); ++u) {
    sum.per_ue_mean_tp_bps[u] /= n_slots;
    sum.per_ue_mean_delay_ms[u] /= n_slots;
    sum.mean_tp_bps += sum.per_ue_mean_tp_bps[u];
  }
  double rsum = 0.0, rlast = 0.0;
  const int last_third_start = opt.slots - opt.slots / 3;
  for (int s = 0; s < opt.slots; ++s) {
    rsum += sum.reward_per_slot[s];
    if (s >= last_third_start) rlast += sum.reward_per_slot[s];
  }
  sum.mean_reward = rsum / n_slots;
  sum.mean_reward_last_third =
      opt.slots / 3 > 0 ? rlast / (opt.slots - last_third_start) : sum.mean_reward;
  sum.mean_delay_ms = delays.empty()
                          ? 0.0
                          : std::accumulate(delays.begin(), delays.end(), 0.0) /
                                delays.size();
  sum.p50_delay_ms = percentile(delays, 50.0);
  sum.p90_delay_ms = percentile(delays, 90.0);
  sum.mean_bler = bler_sum / (n_slots * sc.cfg.total_ues());

  for (const envsim::ByteAccounting& a : world.accounting()) {
    sum.bytes_in += a.bytes_in;
    sum.bytes_delivered += a.bytes_delivered;
    sum.bytes_dropped += a.bytes_dropped;
  }
  world.check_conservation();
  sum.conservation_ok = true;

  if (const auto* lat = provider->act_latencies_ms())
    sum.act_latencies_ms = *lat;

  if (trace) std::fclose(trace);
  if (metrics) std::fclose(metrics);
  if (!opt.out_dir.empty()) {
    provider->save_checkpoint(opt.out_dir + "/checkpoint.bin");
    write_summary_json(sum, opt.out_dir + "/summary.json");
    if (!sum.act_latencies_ms.empty()) {
      json j;
      j["p50_ms"] = percentile(sum.act_latencies_ms, 50.0);
      j["p90_ms"] = percentile(sum.act_latencies_ms, 90.0);
      j["p99_ms"] = percentile(sum.act_latencies_ms, 99.0);
      j["count"] = sum.act_latencies_ms.size();
      std::ofstream(opt.out_dir + "/latency.json") << j.dump(2) << "\n";
    }
  }
  return sum;
}

void write_summary_json(const RunSummary& s, const std::string& path) {
  json j;
  j["schema_version"] = 1;
  j["provider"] = s.provider;
  j["seed"] = s.seed;
  j["slots"] = s.slots;
  j["mean_reward"] = s.mean_reward;
  j["mean_reward_last_third"] = s.mean_reward_last_third;
  j["mean_tp_bps"] = s.mean_tp_bps;
  j["mean_delay_ms"] = s.mean_delay_ms;
  j["p50_delay_ms"] = s.p50_delay_ms;
  j["p90_delay_ms"] = s.p90_delay_ms;
  j["mean_bler"] = s.mean_bler;
  j["bytes"] = {{"in", s.bytes_in},
                {"delivered", s.bytes_delivered},
                {"dropped", s.bytes_dropped}};
  j["conservation_ok"] = s.conservation_ok;
  j["per_ue_mean_tp_bps"] = s.per_ue_mean_tp_bps;
  j["per_ue_mean_delay_ms"] = s.per_ue_mean_delay_ms;
  std::ofstream os(path);
  os << j.dump(2) << "\n";
}

std::vector<RunSummary> run_batch(const envsim::Scenario& sc,
                                  const agent::LearnerConfig& lc, RunOptions opt,
                                  int num_seeds, const std::string& out_dir) {
  std::vector<RunSummary> sums;
  for (int s = 0; s < num_seeds; ++s) {
    RunOptions o = opt;
    o.seed = opt.seed + static_cast<uint64_t>(s);
    if (!out_dir.empty()) o.out_dir = out_dir + "/seed_" + std::to_string(o.seed);
    sums.push_back(run_single(sc, lc, o));
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream(out_dir + "/config.txt") << scenario_to_text(sc);
    json j;
    j["schema_version"] = 1;
    j["provider"] = opt.provider;
    j["slots"] = opt.slots;
    j["num_seeds"] = num_seeds;
    json seeds = json::array();
    double mr = 0.0, md = 0.0, mt = 0.0, mb = 0.0;
    for (const RunSummary& s : sums) {
      json e;
      e["seed"] = s.seed;
      e["mean_reward"] = s.mean_reward;
      e["mean_reward_last_third"] = s.mean_reward_last_third;
      e["mean_delay_ms"] = s.mean_delay_ms;
      e["mean_tp_bps"] = s.mean_tp_bps;
      e["mean_bler"] = s.mean_bler;
      seeds.push_back(e);
      mr += s.mean_reward;
      md += s.mean_delay_ms;
      mt += s.mean_tp_bps;
      mb += s.mean_bler;
    }
    j["seeds"] = seeds;
    j["mean_reward"] = mr / sums.size();
    j["mean_delay_ms"] = md / sums.size();
    j["mean_tp_bps"] = mt / sums.size();
    j["mean_bler"] = mb / sums.size();
    std::ofstream(out_dir + "/summary.json") << j.dump(2) << "\n";
  }
  return sums;
}

}  // namespace xdiff::cli
