/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#pragma once

#include <string>
#include <vector>

#include "env/world.hpp"

namespace xdiff::envsim {

/// Everything needed to build a World.
struct Scenario {
  std::string name;
  NetworkConfig cfg;
  std::vector<UEProfile> profiles;
  RadioParamsBundle radio;
  EnvParams env;
};

struct ScenarioOptions {
  /// Slot at which the per-cell load pattern is re-shuffled (see the lab
  /// traffic builder); negative disables it.
  int demand_shift_slot = -1;
  double traffic_scale = 1.0;
  /// Horizon for generated traffic schedules.
  int schedule_slots = 20000;
};

/// Three tightly packed cells with strong cross-cell coupling and ten UEs on
/// staggered light/heavy traffic phases.
Scenario make_lab_scenario(const ScenarioOptions& opt = {});

/// Same cells spread 18 m apart with ~20 dB wall loss between them and a
/// 200 ms E2 interface.
Scenario make_building_scenario(const ScenarioOptions& opt = {});

/// Two overlapping cells, one UE each, persistent 50/60 Mbps downlink.
Scenario make_two_cell_scenario();

/// Deterministic micro instance (2 cells x 1 UE x 2 RB groups, no fading):
/// disjoint groups meet both demands exactly; any overlap collapses the rate.
Scenario make_toy_two_cell();

World make_world(const Scenario& sc, uint64_t seed);

/// Log-distance pathloss helper shared by the scenario builders.
double pathloss_db(double dist_m, double exponent, double pl0_db = 40.0,
                   double d_min_m = 0.5);

}  // namespace xdiff::envsim
