/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "baselines/provider.hpp"

#include "baselines/ddpg.hpp"
#include "baselines/ddqn.hpp"
#include "baselines/rules.hpp"

namespace xdiff::baselines {

namespace {

/// Online diffusion learner behind the provider interface; the hard variant
/// plays quantized {-1,0,+1} policies and asks for the hard DU allocator.
class XdiffProvider : public PolicyProvider {
 public:
  XdiffProvider(const NetworkConfig& cfg, const agent::LearnerConfig& lc, bool hard)
      : cfg_(cfg), hard_(hard), learner_([&] {
          agent::LearnerConfig c = lc;
          c.hard_quantize = hard;
          return c;
        }()) {
    last_state_.assign(lc.state_dim, 0.0f);
  }

  std::string name() const override { return hard_ ? "xdiff-hard" : "xdiff"; }
  bool wants_hard_allocator() const override { return hard_; }

  void observe(const envsim::SlotObservation& obs,
               const std::optional<RewardBreakdown>& reward) override {
    std::vector<float> state(obs.features.begin(), obs.features.end());
    if (has_pending_ && reward.has_value())
      learner_.observe(last_state_, pending_action_,
                       static_cast<float>(reward->total), state);
    last_state_ = std::move(state);
  }

  PreferencePolicy propose() override {
    pending_action_ = learner_.act(last_state_);
    has_pending_ = true;
    return PreferencePolicy(cfg_, pending_action_);
  }

  std::optional<agent::IterationMetrics> metrics() const override {
    return learner_.last_metrics();
  }
  const std::vector<double>* act_latencies_ms() const override {
    return &learner_.act_latencies_ms();
  }
  void save_checkpoint(const std::string& path) const override {
    learner_.save_checkpoint(path);
  }

 private:
  NetworkConfig cfg_;
  bool hard_;
  agent::DiffusionLearner learner_;
  std::vector<float> last_state_;
  std::vector<float> pending_action_;
  bool has_pending_ = false;
};

}  // namespace

std::unique_ptr<PolicyProvider> make_provider(const std::string& name,
                                              const NetworkConfig& cfg,
                                              const std::vector<UEProfile>& profiles,
                                              const agent::LearnerConfig& learner_cfg) {
  if (name == "cira") return std::make_unique<CiraProvider>(cfg);
  if (name == "otfr") return std::make_unique<OtfrProvider>(cfg);
  if (name == "csrs") return std::make_unique<CsrsProvider>(cfg, profiles);
  if (name == "xdiff")
    return std::make_unique<XdiffProvider>(cfg, learner_cfg, /*hard=*/false);
  if (name == "xdiff-hard")
    return std::make_unique<XdiffProvider>(cfg, learner_cfg, /*hard=*/true);
  if (name == "ddqn") return std::make_unique<DdqnProvider>(cfg, learner_cfg);
  if (name == "ddpg") return std::make_unique<DdpgProvider>(cfg, learner_cfg);
  throw ConfigError("unknown provider: " + name);
}

}  // namespace xdiff::baselines
