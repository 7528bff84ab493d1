/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <memory>
#include <optional>
#include <string>

#include "agent/learner.hpp"
#include "core/types.hpp"
#include "env/observation.hpp"

namespace xdiff::baselines {

/// Uniform interface every policy source implements: the runner feeds it
/// slot observations and rewards, and asks for the next preference policy.
/// The first observe() of a run carries no reward.
class PolicyProvider {
 public:
  virtual ~PolicyProvider() = default;

  virtual std::string name() const = 0;
  virtual void observe(const envsim::SlotObservation& obs,
                       const std::optional<RewardBreakdown>& reward) = 0;
  virtual PreferencePolicy propose() = 0;

  /// True for providers whose policies are {-1,0,+1} recommendations the DU
  /// must honor with the hard allocator.
  virtual bool wants_hard_allocator() const { return false; }

  /// Per-iteration training metrics, when the provider learns.
  virtual std::optional<agent::IterationMetrics> metrics() const { return std::nullopt; }
  virtual const std::vector<double>* act_latencies_ms() const { return nullptr; }
  virtual void save_checkpoint(const std::string& /*path*/) const {}
};

/// Providers selectable from the CLI.
std::unique_ptr<PolicyProvider> make_provider(const std::string& name,
                                              const NetworkConfig& cfg,
                                              const std::vector<UEProfile>& profiles,
                                              const agent::LearnerConfig& learner_cfg);

}  // namespace xdiff::baselines
