/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <optional>
#include <vector>

#include "core/types.hpp"

namespace xdiff {

/// Normalized throughput deficit max((P - rho) / P, 0). Throws on P <= 0.
double ue_throughput_regret(double rho_bps, double demand_bps);

/// Normalized delay deficit max((tau - D) / D, 0). Throws on D <= 0.
double ue_delay_regret(double tau_ms, double demand_ms);

/// Per-cell throughput/delay rewards and the lambda-weighted network total.
///
/// samples[i] must be present for the flat UE index i (cell-major order);
/// a missing entry raises IncompleteObservationError. `demand_override`
/// substitutes the effective throughput demand per UE (used when traffic
/// schedules vary the offered rate); entries <= 0 mean "no active demand"
/// and contribute zero regret.
RewardBreakdown compute_rewards(
    const NetworkConfig& cfg,
    const std::vector<std::optional<QoSSample>>& samples,
    const std::vector<UEProfile>& profiles,
    const std::vector<double>* demand_override = nullptr);

}  // namespace xdiff
