/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <vector>

#include "core/types.hpp"

namespace xdiff::envsim {

/// Per-UE feature indices inside the state vector. Layout is cell-major,
/// UE-minor, feature-minor and is frozen: the critics and the diffusion
/// conditioner both depend on it.
enum Feature : int {
  kFeatTp = 0,         // slot-mean delivered rate / 200 Mbps
  kFeatDelay = 1,      // slot-mean packet delay / 5000 ms
  kFeatPrbs = 2,       // slot-mean PRBs per subframe / num_rbs
  kFeatUlSnr = 3,      // uplink SNR proxy / 60 dB
  kFeatPhr = 4,        // power headroom proxy / 60 dB
  kFeatMcs = 5,        // slot-mean MCS of attempted TBs / 28
  kFeatBler = 6,       // failed TBs / attempted TBs, raw
  kFeatTbs = 7,        // slot-mean TBs in flight per subframe (0..1)
  kFeatSchedRbs = 8,   // RBs scheduled in the last subframe / num_rbs
  kFeatCount = 9,
};

constexpr double kTpNormBps = 200e6;
constexpr double kDelayNormMs = 5000.0;
constexpr double kSnrNormDb = 60.0;
constexpr double kPhrNormDb = 60.0;
constexpr double kMcsNorm = 28.0;

/// Normalized per-UE KPM/MAC features aggregated over one RIC slot.
struct SlotObservation {
  int total_ues = 0;
  std::vector<float> features;  // total_ues * kFeatCount, all within [0,1]

  SlotObservation() = default;
  explicit SlotObservation(int ues)
      : total_ues(ues), features(static_cast<size_t>(ues) * kFeatCount, 0.0f) {}

  float get(int ue, Feature f) const {
    return features[static_cast<size_t>(ue) * kFeatCount + f];
  }
  void set(int ue, Feature f, float v) {
    features[static_cast<size_t>(ue) * kFeatCount + f] = v;
  }
  int dim() const { return total_ues * kFeatCount; }
};

/// Raw per-subframe measurement for one UE, before normalization.
struct SubframeSample {
  double delivered_bits = 0.0;
  double delay_ms = 0.0;
  int prbs = 0;
  double ul_snr_db = 0.0;
  double phr_db = 0.0;
  int mcs = -1;       // -1 when no TB was attempted
  bool attempted = false;
  bool failed = false;
  int sched_rbs = 0;
};

/// Aggregates one slot of per-subframe samples into the normalized state
/// vector. Means over the slot; per-feature bounds as documented above.
SlotObservation build_observation(const NetworkConfig& cfg,
                                  const std::vector<std::vector<SubframeSample>>& per_ue);

}  // namespace xdiff::envsim
