/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "radio/channel.hpp"

#include <algorithm>
#include <cmath>

namespace xdiff::radio {

ChannelState::ChannelState(int cells, int ues, int groups, const RadioParams& p)
    : num_cells(cells),
      num_ues(ues),
      num_groups(groups),
      pathloss_db(static_cast<size_t>(cells) * ues, 0.0),
      shadowing_db(static_cast<size_t>(cells) * ues, 0.0),
      fast_fade_db(static_cast<size_t>(cells) * ues * groups, 0.0),
      tx_power_dbm(cells, p.tx_power_dbm),
      noise_dbm_per_rb(p.noise_dbm_per_rb) {}

double ChannelState::rx_power_dbm(int cell, int ue, int group) const {
  return tx_power_dbm[cell] - pathloss(cell, ue) + shadow(cell, ue) +
         fade(cell, ue, group);
}

void ChannelState::validate() const {
  for (double pl : pathloss_db) {
    if (!(pl >= 0.0) || !std::isfinite(pl))
      throw ConfigError("ChannelState: pathloss must be finite and >= 0 dB");
  }
  for (double s : shadowing_db)
    if (!std::isfinite(s)) throw ConfigError("ChannelState: non-finite shadowing");
  for (double f : fast_fade_db)
    if (!std::isfinite(f)) throw ConfigError("ChannelState: non-finite fading");
}

namespace {
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
}  // namespace

double sinr_db(const ChannelState& st, int serving, int ue, int group,
               const std::vector<int>& interferers, double clamp_db) {
  const double s_mw = dbm_to_mw(st.rx_power_dbm(serving, ue, group));
  double denom_mw = dbm_to_mw(st.noise_dbm_per_rb);
  for (int c : interferers) denom_mw += dbm_to_mw(st.rx_power_dbm(c, ue, group));
  const double ratio_db = 10.0 * std::log10(s_mw / denom_mw);
  return std::clamp(ratio_db, -clamp_db, clamp_db);
}

void evolve_shadowing(ChannelState& st, const RadioParams& p, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, p.shadow_sigma_db);
  const double rho = p.shadow_rho;
  const double mix = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  for (double& s : st.shadowing_db) s = rho * s + mix * n(rng);
}

void redraw_fast_fading(ChannelState& st, const RadioParams& p, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, p.fade_sigma_db);
  for (double& f : st.fast_fade_db) f = n(rng);
}

}  // namespace xdiff::radio
