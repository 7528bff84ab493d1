/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "env/scenario.hpp"

#include <cmath>

namespace xdiff::envsim {

double pathloss_db(double dist_m, double exponent, double pl0_db, double d_min_m) {
  const double d = std::max(dist_m, d_min_m);
  return pl0_db + 10.0 * exponent * std::log10(d);
}

namespace {

struct Point {
  double x, y;
};

double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<double> pathloss_matrix(const std::vector<Point>& cells,
                                    const std::vector<Point>& ues, double exponent,
                                    double cross_wall_db = 0.0,
                                    const std::vector<int>* ue_cell = nullptr) {
  std::vector<double> pl(cells.size() * ues.size());
  for (size_t c = 0; c < cells.size(); ++c)
    for (size_t u = 0; u < ues.size(); ++u) {
      double v = pathloss_db(dist(cells[c], ues[u]), exponent);
      if (ue_cell && (*ue_cell)[u] != static_cast<int>(c)) {
        const int walls = std::abs((*ue_cell)[u] - static_cast<int>(c));
        v += cross_wall_db * walls;
      }
      pl[c * ues.size() + u] = v;
    }
  return pl;
}

/// Light/heavy square wave per UE. Cells peak at staggered times (offset by
/// a third of the period per cell), so a static frequency split leaves the
/// peaking cell short while the others idle. The optional shift slot
/// re-shuffles which cells carry the heavy load, changing the interference
/// pattern the policy must adapt to without changing the total offered load
/// much.
std::vector<TrafficSegment> phased_traffic(double base_bps, int ue_index, int cell,
                                           double slot_ms, const ScenarioOptions& opt,
                                           double heavy_mult, int period_slots) {
  std::vector<TrafficSegment> segs;
  const int offset = (cell * period_slots) / 3 + (ue_index * 17) % 60;
  const int half = period_slots / 2;
  const double shift_ms =
      opt.demand_shift_slot >= 0 ? opt.demand_shift_slot * slot_ms : -1.0;
  for (int s = 0; s < opt.schedule_slots; s += 1) {
    const bool boundary = ((s + offset) % half) == 0 || s == 0;
    if (!boundary) continue;
    const bool heavy = (((s + offset) / half) % 2) == 0;
    double scale = heavy ? heavy_mult : 1.0;
    const double t_ms = s * slot_ms;
    if (shift_ms >= 0.0 && t_ms >= shift_ms) {
      // After the shift, rotate the heavy role across cells.
      const bool rotated_heavy = (((s + offset + half / 2) / half) % 2) == 0;
      scale = rotated_heavy ? heavy_mult : 1.0;
      scale *= (cell == 1) ? 1.25 : 0.9;
    }
    segs.push_back({t_ms, base_bps * scale * opt.traffic_scale});
  }
  return segs;
}

}  // namespace

Scenario make_lab_scenario(const ScenarioOptions& opt) {
  Scenario sc;
  sc.name = "lab";
  sc.cfg.num_cells = 3;
  sc.cfg.ues_per_cell = {4, 3, 3};
  sc.cfg.num_rbs = 106;
  sc.cfg.num_rb_groups = 10;
  sc.cfg.slot_ms = 100.0;
  sc.cfg.gamma = 0.5;
  sc.cfg.lambda_p = {0.1, 0.1, 0.1};
  sc.cfg.lambda_d = {0.02, 0.02, 0.02};

  const std::vector<Point> cells = {{0.0, 0.0}, {4.0, 0.0}, {2.0, 3.46}};
  const std::vector<Point> ues = {
      {1.6, 0.3}, {2.0, 1.2}, {0.9, 1.0}, {1.3, -0.8},   // cell 0
      {2.6, 0.4}, {3.1, 1.1}, {2.5, -0.9},               // cell 1
      {1.9, 2.4}, {2.7, 2.6}, {1.2, 2.5},                // cell 2
  };
  // Cell 0 carries four UEs and more than a third of the total load, so a
  // static equal split cannot serve it even between traffic peaks.
  const std::vector<double> base_mbps = {20, 16, 14, 12, 8, 6, 5, 7, 5, 4};

  int u = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < sc.cfg.ues_per_cell[k]; ++i, ++u) {
      UEProfile p;
      p.cell_id = k;
      p.ue_id = i;
      p.pos_x_m = ues[u].x;
      p.pos_y_m = ues[u].y;
      p.tp_demand_bps = base_mbps[u] * 1e6;
      p.delay_demand_ms = 300.0;
      p.traffic = phased_traffic(base_mbps[u] * 1e6, u, k, sc.cfg.slot_ms, opt,
                                 /*heavy_mult=*/1.6, /*period_slots=*/300);
      sc.profiles.push_back(p);
    }

  sc.radio.params.shadow_sigma_db = 2.0;
  sc.radio.params.shadow_rho = 0.9;
  sc.radio.params.fade_sigma_db = 1.5;
  sc.radio.pathloss_db = pathloss_matrix(cells, ues, /*exponent=*/2.2);
  sc.env.e2_latency_ms = 0.0;
  // DU-buffer-sized queues: congestion episodes stay short enough for the
  // slot-level feedback loop to see policy improvements.
  sc.env.max_queue_bytes = 512 * 1024;
  return sc;
}

Scenario make_building_scenario(const ScenarioOptions& opt) {
  Scenario sc;
  sc.name = "building";
  sc.cfg.num_cells = 3;
  sc.cfg.ues_per_cell = {4, 3, 3};
  sc.cfg.num_rbs = 106;
  sc.cfg.num_rb_groups = 10;
  sc.cfg.slot_ms = 100.0;
  sc.cfg.gamma = 0.5;
  sc.cfg.lambda_p = {0.1, 0.1, 0.1};
  sc.cfg.lambda_d = {0.02, 0.02, 0.02};

  const std::vector<Point> cells = {{0.0, 0.0}, {18.0, 0.0}, {36.0, 0.0}};
  const std::vector<Point> ues = {
      {6.5, 1.5},  {4.5, -2.5}, {8.0, 0.5},  {5.5, 3.0},   // cell 0
      {24.0, 1.5}, {13.5, -1.5}, {22.0, -2.0},             // cell 1
      {41.5, 1.0}, {30.5, 2.0},  {38.0, -2.5},             // cell 2
  };
  const std::vector<double> base_mbps = {22, 16, 13, 11, 24, 18, 14, 22, 16, 12};
  std::vector<int> ue_cell = {0, 0, 0, 0, 1, 1, 1, 2, 2, 2};

  int u = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < sc.cfg.ues_per_cell[k]; ++i, ++u) {
      UEProfile p;
      p.cell_id = k;
      p.ue_id = i;
      p.pos_x_m = ues[u].x;
      p.pos_y_m = ues[u].y;
      p.tp_demand_bps = base_mbps[u] * 1e6;
      p.delay_demand_ms = 300.0;
      p.traffic = phased_traffic(base_mbps[u] * 1e6, u, k, sc.cfg.slot_ms, opt,
                                 /*heavy_mult=*/1.6, /*period_slots=*/300);
      sc.profiles.push_back(p);
    }

  sc.radio.params.shadow_sigma_db = 2.5;
  sc.radio.params.shadow_rho = 0.9;
  sc.radio.params.fade_sigma_db = 2.0;
  sc.radio.pathloss_db =
      pathloss_matrix(cells, ues, /*exponent=*/2.8, /*cross_wall_db=*/20.0, &ue_cell);
  sc.env.e2_latency_ms = 200.0;
  sc.env.max_queue_bytes = 512 * 1024;
  return sc;
}

Scenario make_two_cell_scenario() {
  Scenario sc;
  sc.name = "twocell";
  sc.cfg.num_cells = 2;
  sc.cfg.ues_per_cell = {1, 1};
  sc.cfg.num_rbs = 106;
  sc.cfg.num_rb_groups = 10;
  sc.cfg.slot_ms = 100.0;
  sc.cfg.gamma = 0.9;
  sc.cfg.lambda_p = {1.0, 1.0};
  sc.cfg.lambda_d = {1.0, 1.0};

  const std::vector<Point> cells = {{0.0, 0.0}, {3.0, 0.0}};
  const std::vector<Point> ues = {{1.2, 0.4}, {1.8, -0.4}};
  const double demands[2] = {50e6, 60e6};
  for (int k = 0; k < 2; ++k) {
    UEProfile p;
    p.cell_id = k;
    p.ue_id = 0;
    p.pos_x_m = ues[k].x;
    p.pos_y_m = ues[k].y;
    p.tp_demand_bps = demands[k];
    p.delay_demand_ms = 50.0;
    sc.profiles.push_back(p);
  }

  sc.radio.params.shadow_sigma_db = 1.0;
  sc.radio.params.shadow_rho = 0.95;
  sc.radio.params.fade_sigma_db = 1.0;
  sc.radio.pathloss_db = pathloss_matrix(cells, ues, /*exponent=*/2.2);
  sc.env.e2_latency_ms = 0.0;
  return sc;
}

Scenario make_toy_two_cell() {
  Scenario sc;
  sc.name = "toy";
  sc.cfg.num_cells = 2;
  sc.cfg.ues_per_cell = {1, 1};
  sc.cfg.num_rbs = 2;
  sc.cfg.num_rb_groups = 2;
  sc.cfg.slot_ms = 20.0;
  sc.cfg.gamma = 0.9;
  sc.cfg.lambda_p = {1.0, 1.0};
  sc.cfg.lambda_d = {0.1, 0.1};

  const std::vector<Point> cells = {{0.0, 0.0}, {2.0, 0.0}};
  const std::vector<Point> ues = {{0.9, 0.0}, {1.1, 0.0}};
  for (int k = 0; k < 2; ++k) {
    UEProfile p;
    p.cell_id = k;
    p.ue_id = 0;
    p.pos_x_m = ues[k].x;
    p.pos_y_m = ues[k].y;
    p.tp_demand_bps = 1.2e6;
    p.delay_demand_ms = 200.0;
    sc.profiles.push_back(p);
  }

  sc.radio.params.shadow_sigma_db = 0.0;
  sc.radio.params.shadow_rho = 1.0;
  sc.radio.params.fade_sigma_db = 0.0;
  sc.radio.params.mcs_margin_db = 6.0;
  sc.radio.params.bler_slope = 3.0;
  sc.radio.pathloss_db = pathloss_matrix(cells, ues, /*exponent=*/2.2);
  sc.env.e2_latency_ms = 0.0;
  // 150 B = 1200 bits arrive each subframe and fit in one RB at top CQI, so
  // a clean group split drains the queue every millisecond. The small queue
  // cap keeps congestion transients short-lived.
  sc.env.packet_bytes = 150;
  sc.env.max_queue_bytes = 16 * 1024;
  return sc;
}

World make_world(const Scenario& sc, uint64_t seed) {
  return World(sc.cfg, sc.profiles, sc.radio, sc.env, seed);
}

}  // namespace xdiff::envsim
