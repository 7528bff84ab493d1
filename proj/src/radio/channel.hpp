/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <random>
#include <vector>

#include "core/types.hpp"

namespace xdiff::radio {

/// Stochastic-channel and power-model knobs. All values are calibration
/// constants of the parametric link model.
struct RadioParams {
  double tx_power_dbm = 10.0;        // per RB, per cell
  double noise_dbm_per_rb = -111.0;
  int re_per_rb = 288;               // data REs per RB per subframe (2 layers)
  double bler_slope = 1.0;           // logistic slope per dB
  double mcs_margin_db = 3.0;        // link-adaptation backoff
  double shadow_sigma_db = 2.0;
  double shadow_rho = 0.9;           // AR(1) correlation per slot
  double fade_sigma_db = 1.5;        // i.i.d. per subframe per group
  double pcmax_dbm = 23.0;
  double sinr_clamp_db = 60.0;
};

/// Per-link large- and small-scale state. pathloss is fixed geometry; the
/// shadowing walk advances per slot and fast fading is redrawn per subframe.
struct ChannelState {
  int num_cells = 0;
  int num_ues = 0;
  int num_groups = 0;
  std::vector<double> pathloss_db;    // [cell][ue]
  std::vector<double> shadowing_db;   // [cell][ue]
  std::vector<double> fast_fade_db;   // [cell][ue][group]
  std::vector<double> tx_power_dbm;   // [cell], per RB
  double noise_dbm_per_rb = -111.0;

  ChannelState() = default;
  ChannelState(int cells, int ues, int groups, const RadioParams& p);

  double& pathloss(int cell, int ue) { return pathloss_db[idx(cell, ue)]; }
  double pathloss(int cell, int ue) const { return pathloss_db[idx(cell, ue)]; }
  double& shadow(int cell, int ue) { return shadowing_db[idx(cell, ue)]; }
  double shadow(int cell, int ue) const { return shadowing_db[idx(cell, ue)]; }
  double& fade(int cell, int ue, int g) { return fast_fade_db[fidx(cell, ue, g)]; }
  double fade(int cell, int ue, int g) const { return fast_fade_db[fidx(cell, ue, g)]; }

  /// Received power on one RB of `group` from `cell` at `ue`, in dBm.
  double rx_power_dbm(int cell, int ue, int group) const;

  void validate() const;

 private:
  size_t idx(int cell, int ue) const { return static_cast<size_t>(cell) * num_ues + ue; }
  size_t fidx(int cell, int ue, int g) const {
    return (static_cast<size_t>(cell) * num_ues + ue) * num_groups + g;
  }
};

/// SINR at `ue` served by `serving` on `group`, with `interferers` the set of
/// other cells transmitting on that group. Linear-domain S / (N + sum I),
/// saturated to +-clamp_db.
double sinr_db(const ChannelState& st, int serving, int ue, int group,
               const std::vector<int>& interferers, double clamp_db = 60.0);

/// Advances the shadowing AR(1) walk one slot:
/// s' = rho * s + sqrt(1 - rho^2) * N(0, sigma). rho = 1 keeps it constant.
void evolve_shadowing(ChannelState& st, const RadioParams& p, std::mt19937_64& rng);

/// Redraws i.i.d. per-(cell, ue, group) fast fading for one subframe.
void redraw_fast_fading(ChannelState& st, const RadioParams& p, std::mt19937_64& rng);

}  // namespace xdiff::radio
