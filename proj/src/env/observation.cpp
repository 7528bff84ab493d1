/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "env/observation.hpp"

#include <algorithm>

namespace xdiff::envsim {

namespace {
inline float clamp01(double v) {
  return static_cast<float>(std::clamp(v, 0.0, 1.0));
}
}  // namespace

SlotObservation build_observation(
    const NetworkConfig& cfg, const std::vector<std::vector<SubframeSample>>& per_ue) {
  SlotObservation obs(cfg.total_ues());
  for (int u = 0; u < cfg.total_ues(); ++u) {
    const auto& samples = per_ue[u];
    if (samples.empty()) continue;  // zero-padded
    const double n = static_cast<double>(samples.size());
    double tp = 0, delay = 0, prbs = 0, snr = 0, phr = 0, tbs = 0;
    double mcs_sum = 0;
    long attempts = 0, failures = 0;
    for (const SubframeSample& s : samples) {
      tp += s.delivered_bits;
      delay += s.delay_ms;
      prbs += s.prbs;
      snr += s.ul_snr_db;
      phr += s.phr_db;
      if (s.attempted) {
        ++attempts;
        mcs_sum += s.mcs;
        if (s.failed) ++failures;
      }
      tbs += s.attempted ? 1.0 : 0.0;
    }
    const double tp_bps = tp / n * (1000.0 / cfg.subframe_ms);
    obs.set(u, kFeatTp, clamp01(tp_bps / kTpNormBps));
    obs.set(u, kFeatDelay, clamp01(delay / n / kDelayNormMs));
    obs.set(u, kFeatPrbs, clamp01(prbs / n / cfg.num_rbs));
    obs.set(u, kFeatUlSnr, clamp01(snr / n / kSnrNormDb));
    obs.set(u, kFeatPhr, clamp01(phr / n / kPhrNormDb));
    obs.set(u, kFeatMcs, clamp01(attempts ? mcs_sum / attempts / kMcsNorm : 0.0));
    obs.set(u, kFeatBler,
            clamp01(attempts ? static_cast<double>(failures) / attempts : 0.0));
    obs.set(u, kFeatTbs, clamp01(tbs / n));
    obs.set(u, kFeatSchedRbs,
            clamp01(static_cast<double>(samples.back().sched_rbs) / cfg.num_rbs));
  }
  return obs;
}

}  // namespace xdiff::envsim
