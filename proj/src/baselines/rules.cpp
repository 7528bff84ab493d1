/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "baselines/rules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace xdiff::baselines {

PreferencePolicy OtfrProvider::propose() {
  PreferencePolicy p(cfg_);
  const int G = cfg_.num_rb_groups;
  const int C = cfg_.num_cells;
  for (int k = 0; k < C; ++k) {
    const int lo = (k * G) / C;
    const int hi = ((k + 1) * G) / C;
    for (int i = 0; i < cfg_.ues_per_cell[k]; ++i)
      for (int g = 0; g < G; ++g)
        p.value(k, i, g) = (g >= lo && g < hi) ? 1.0f : -1.0f;
  }
  return p;
}

std::vector<int> largest_remainder(const std::vector<double>& weights, int total) {
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> out(weights.size(), 0);
  if (wsum <= 0.0 || total <= 0) return out;
  std::vector<double> rem(weights.size());
  int assigned = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    const double exact = total * weights[i] / wsum;
    out[i] = static_cast<int>(std::floor(exact));
    rem[i] = exact - out[i];
    assigned += out[i];
  }
  std::vector<size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (rem[a] != rem[b]) return rem[a] > rem[b];
    return a < b;
  });
  for (size_t i = 0; assigned < total && i < order.size(); ++i, ++assigned)
    ++out[order[i]];
  return out;
}

PreferencePolicy CsrsProvider::propose() {
  PreferencePolicy p(cfg_);
  const int G = cfg_.num_rb_groups;
  if (last_obs_.total_ues == 0) return p;  // no observation yet: neutral

  // Edge classification: the bottom third of the slot's SINR proxies,
  // skipping UEs that tie the slot maximum (an all-equal slot has no edge).
  const int n = cfg_.total_ues();
  std::vector<float> snr(n);
  for (int u = 0; u < n; ++u) snr[u] = last_obs_.get(u, envsim::kFeatUlSnr);
  std::vector<int> by_snr(n);
  for (int u = 0; u < n; ++u) by_snr[u] = u;
  std::stable_sort(by_snr.begin(), by_snr.end(),
                   [&](int a, int b) { return snr[a] < snr[b]; });
  const float top = snr[by_snr.back()];
  const int edge_count = (n + 2) / 3;

  std::vector<int> edge_ues;
  double total_demand = 0.0;
  for (int u = 0; u < n; ++u) total_demand += profiles_[u].tp_demand_bps;
  for (int i = 0; i < edge_count; ++i)
    if (snr[by_snr[i]] < top) edge_ues.push_back(by_snr[i]);
  std::sort(edge_ues.begin(), edge_ues.end());
  double edge_demand = 0.0;
  for (int u : edge_ues) edge_demand += profiles_[u].tp_demand_bps;
  if (edge_ues.empty() || edge_demand <= 0.0) return p;  // all center: neutral

  // Edge UEs take a demand-share slice of the band, apportioned by largest
  // remainder and assigned as contiguous spans.
  const int edge_total =
      static_cast<int>(std::llround(G * edge_demand / std::max(total_demand, 1.0)));
  std::vector<double> weights;
  for (int u : edge_ues) weights.push_back(profiles_[u].tp_demand_bps);
  const std::vector<int> counts = largest_remainder(weights, std::min(edge_total, G));

  std::vector<int> owner(G, -1);  // flat UE that owns each edge group
  int next = 0;
  for (size_t e = 0; e < edge_ues.size(); ++e)
    for (int c = 0; c < counts[e] && next < G; ++c) owner[next++] = edge_ues[e];

  for (int k = 0, u = 0; k < cfg_.num_cells; ++k)
    for (int i = 0; i < cfg_.ues_per_cell[k]; ++i, ++u) {
      const bool is_edge =
          std::find(edge_ues.begin(), edge_ues.end(), u) != edge_ues.end();
      for (int g = 0; g < G; ++g) {
        if (owner[g] == u)
          p.value(k, i, g) = 1.0f;
        else if (owner[g] >= 0)
          p.value(k, i, g) = -1.0f;  // someone else's exclusive channel
        else
          p.value(k, i, g) = is_edge ? -1.0f : 0.0f;  // shared center spectrum
      }
    }
  return p;
}

}  // namespace xdiff::baselines
