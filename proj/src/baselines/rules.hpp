/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include "baselines/provider.hpp"

namespace xdiff::baselines {

/// Cell-independent resource allocation: no coordination, all-zero
/// preferences, every DU runs plain PF over the whole band.
class CiraProvider : public PolicyProvider {
 public:
  explicit CiraProvider(const NetworkConfig& cfg) : cfg_(cfg) {}
  std::string name() const override { return "cira"; }
  void observe(const envsim::SlotObservation&,
               const std::optional<RewardBreakdown>&) override {}
  PreferencePolicy propose() override { return PreferencePolicy(cfg_); }

 private:
  NetworkConfig cfg_;
};

/// Static frequency reuse: cell k claims groups [floor(kG/C), floor((k+1)G/C))
/// for its UEs (+1) and renounces the rest (-1).
class OtfrProvider : public PolicyProvider {
 public:
  explicit OtfrProvider(const NetworkConfig& cfg) : cfg_(cfg) {}
  std::string name() const override { return "otfr"; }
  void observe(const envsim::SlotObservation&,
               const std::optional<RewardBreakdown>&) override {}
  PreferencePolicy propose() override;

 private:
  NetworkConfig cfg_;
};

/// Demand-proportional spectrum sharing: edge UEs (low SINR proxy) get
/// exclusive group spans sized by largest-remainder on their demand share;
/// center UEs keep no-preference access to the remaining groups.
class CsrsProvider : public PolicyProvider {
 public:
  CsrsProvider(const NetworkConfig& cfg, const std::vector<UEProfile>& profiles)
      : cfg_(cfg), profiles_(profiles) {}
  std::string name() const override { return "csrs"; }
  void observe(const envsim::SlotObservation& obs,
               const std::optional<RewardBreakdown>&) override {
    last_obs_ = obs;
  }
  PreferencePolicy propose() override;

 private:
  NetworkConfig cfg_;
  std::vector<UEProfile> profiles_;
  envsim::SlotObservation last_obs_;
};

/// Largest-remainder apportionment of `total` units by weight.
std::vector<int> largest_remainder(const std::vector<double>& weights, int total);

}  // namespace xdiff::baselines
