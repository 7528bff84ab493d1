/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "core/reward.hpp"

#include <algorithm>

namespace xdiff {

double ue_throughput_regret(double rho_bps, double demand_bps) {
  if (demand_bps <= 0.0)
    throw std::invalid_argument("throughput demand must be positive");
  return std::max((demand_bps - rho_bps) / demand_bps, 0.0);
}

double ue_delay_regret(double tau_ms, double demand_ms) {
  if (demand_ms <= 0.0)
    throw std::invalid_argument("delay demand must be positive");
  return std::max((tau_ms - demand_ms) / demand_ms, 0.0);
}

RewardBreakdown compute_rewards(const NetworkConfig& cfg,
                                const std::vector<std::optional<QoSSample>>& samples,
                                const std::vector<UEProfile>& profiles,
                                const std::vector<double>* demand_override) {
  if (static_cast<int>(profiles.size()) != cfg.total_ues())
    throw IncompleteObservationError("profile list does not cover every UE");
  if (samples.size() != profiles.size())
    throw IncompleteObservationError("sample list does not cover every UE");

  RewardBreakdown out;
  out.r_tp.assign(cfg.num_cells, 0.0);
  out.r_delay.assign(cfg.num_cells, 0.0);

  for (size_t u = 0; u < profiles.size(); ++u) {
    if (!samples[u].has_value())
      throw IncompleteObservationError("missing QoS sample for UE " + std::to_string(u));
    const UEProfile& prof = profiles[u];
    const QoSSample& s = *samples[u];
    double demand = prof.tp_demand_bps;
    if (demand_override) demand = (*demand_override)[u];
    const int k = prof.cell_id;
    if (demand > 0.0)
      out.r_tp[k] += std::min((s.achieved_tp_bps - demand) / demand, 0.0);
    out.r_delay[k] +=
        std::min((prof.delay_demand_ms - s.achieved_delay_ms) / prof.delay_demand_ms, 0.0);
  }

  out.total = 0.0;
  for (int k = 0; k < cfg.num_cells; ++k)
    out.total += cfg.lambda_p[k] * out.r_tp[k] + cfg.lambda_d[k] * out.r_delay[k];
  return out;
}

}  // namespace xdiff
