/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "cli/config_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace xdiff::cli {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  size_t e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& inner) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  const std::string last = trim(cur);
  if (!last.empty()) out.push_back(last);
  return out;
}

double parse_number(const std::string& tok, const std::string& ctx) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw ConfigError(ctx + ": expected a number, got '" + tok + "'");
  }
  if (pos != tok.size())
    throw ConfigError(ctx + ": trailing characters in number '" + tok + "'");
  return v;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_text(ss.str(), path);
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
  ConfigFile cf;
  cf.origin_ = origin;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": empty key or value");
    cf.entries_[key] = {lineno, value};
  }
  return cf;
}

void ConfigFile::fail(const std::string& key, const std::string& what) const {
  const auto it = entries_.find(key);
  const std::string loc =
      it == entries_.end()
          ? origin_ + ": key '" + key + "'"
          : origin_ + ":" + std::to_string(it->second.line) + ": key '" + key + "'";
  throw ConfigError(loc + ": " + what);
}

double ConfigFile::get_double(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(key, "missing");
  return parse_number(it->second.raw,
                      origin_ + ":" + std::to_string(it->second.line) + " " + key);
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long ConfigFile::get_long(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const double v = get_double(key);
  if (std::abs(v - std::llround(v)) > 1e-9) fail(key, "expected an integer");
  return std::llround(v);
}

std::string ConfigFile::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(key, "missing");
  return it->second.raw;
}

std::vector<double> ConfigFile::get_array(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(key, "missing");
  const std::string& raw = it->second.raw;
  if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']')
    fail(key, "expected an array [..]");
  std::vector<double> out;
  for (const std::string& tok : split_list(raw.substr(1, raw.size() - 2)))
    out.push_back(parse_number(tok, key));
  return out;
}

std::vector<TrafficSegment> ConfigFile::get_traffic(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) fail(key, "missing");
  const std::string& raw = it->second.raw;
  if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']')
    fail(key, "expected an array of start_ms:rate_bps entries");
  std::vector<TrafficSegment> segs;
  for (const std::string& tok : split_list(raw.substr(1, raw.size() - 2))) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos) fail(key, "expected start_ms:rate_bps, got " + tok);
    TrafficSegment seg;
    seg.start_ms = parse_number(trim(tok.substr(0, colon)), key);
    seg.rate_bps = parse_number(trim(tok.substr(colon + 1)), key);
    segs.push_back(seg);
  }
  return segs;
}

namespace {

void apply_network_overrides(const ConfigFile& cf, NetworkConfig& cfg) {
  cfg.num_cells = static_cast<int>(cf.get_long("num_cells", cfg.num_cells));
  if (cf.has("ues_per_cell")) {
    cfg.ues_per_cell.clear();
    for (double v : cf.get_array("ues_per_cell"))
      cfg.ues_per_cell.push_back(static_cast<int>(v));
  }
  cfg.num_rbs = static_cast<int>(cf.get_long("num_rbs", cfg.num_rbs));
  cfg.num_rb_groups = static_cast<int>(cf.get_long("num_rb_groups", cfg.num_rb_groups));
  cfg.slot_ms = cf.get_double("slot_ms", cfg.slot_ms);
  cfg.gamma = cf.get_double("gamma", cfg.gamma);
  if (cf.has("lambda_p")) cfg.lambda_p = cf.get_array("lambda_p");
  if (cf.has("lambda_d")) cfg.lambda_d = cf.get_array("lambda_d");
  cfg.rng_seed = static_cast<uint64_t>(cf.get_long("rng_seed", cfg.rng_seed));
}

void apply_radio_env_overrides(const ConfigFile& cf, envsim::Scenario& sc) {
  radio::RadioParams& rp = sc.radio.params;
  rp.tx_power_dbm = cf.get_double("radio.tx_power_dbm", rp.tx_power_dbm);
  rp.noise_dbm_per_rb = cf.get_double("radio.noise_dbm_per_rb", rp.noise_dbm_per_rb);
  rp.re_per_rb = static_cast<int>(cf.get_long("radio.re_per_rb", rp.re_per_rb));
  rp.bler_slope = cf.get_double("radio.bler_slope", rp.bler_slope);
  rp.mcs_margin_db = cf.get_double("radio.mcs_margin_db", rp.mcs_margin_db);
  rp.shadow_sigma_db = cf.get_double("radio.shadow_sigma_db", rp.shadow_sigma_db);
  rp.shadow_rho = cf.get_double("radio.shadow_rho", rp.shadow_rho);
  rp.fade_sigma_db = cf.get_double("radio.fade_sigma_db", rp.fade_sigma_db);
  rp.pcmax_dbm = cf.get_double("radio.pcmax_dbm", rp.pcmax_dbm);
  if (cf.has("radio.mcs_table"))
    sc.radio.mcs = radio::McsTable::load(cf.get_string("radio.mcs_table"));

  envsim::EnvParams& ep = sc.env;
  ep.e2_latency_ms = cf.get_double("env.e2_latency_ms", ep.e2_latency_ms);
  ep.packet_bytes = static_cast<int>(cf.get_long("env.packet_bytes", ep.packet_bytes));
  ep.max_queue_bytes = cf.get_long("env.max_queue_bytes", ep.max_queue_bytes);
  ep.literal_weight = cf.get_long("env.literal_weight", ep.literal_weight ? 1 : 0) != 0;
}

void apply_ue_overrides(const ConfigFile& cf, envsim::Scenario& sc) {
  bool any_ue = false;
  for (const auto& [key, val] : cf.entries())
    if (key.rfind("ue.", 0) == 0) any_ue = true;
  if (!any_ue) return;

  sc.cfg.validate();
  std::vector<UEProfile> profiles;
  std::vector<double> pathloss(static_cast<size_t>(sc.cfg.num_cells) *
                               sc.cfg.total_ues());
  std::vector<double> cx, cy;
  if (cf.has("cells.x")) cx = cf.get_array("cells.x");
  if (cf.has("cells.y")) cy = cf.get_array("cells.y");
  const double exponent = cf.get_double("pathloss.exponent", 2.2);
  const double wall_db = cf.get_double("pathloss.wall_db", 0.0);

  int u = 0;
  std::vector<int> per_cell_count(sc.cfg.num_cells, 0);
  for (int n = 0; n < sc.cfg.total_ues(); ++n) {
    const std::string p = "ue." + std::to_string(n) + ".";
    if (!cf.has(p + "cell"))
      throw ConfigError("config: missing block for ue." + std::to_string(n));
    UEProfile prof;
    prof.cell_id = static_cast<int>(cf.get_long(p + "cell", 0));
    if (prof.cell_id < 0 || prof.cell_id >= sc.cfg.num_cells)
      throw ConfigError("config: ue." + std::to_string(n) + ".cell out of range");
    prof.ue_id = per_cell_count[prof.cell_id]++;
    prof.tp_demand_bps = cf.get_double(p + "tp_demand_bps");
    prof.delay_demand_ms = cf.get_double(p + "delay_demand_ms");
    if (cf.has(p + "position")) {
      const auto pos = cf.get_array(p + "position");
      if (pos.size() != 2)
        throw ConfigError("config: " + p + "position must be [x, y]");
      prof.pos_x_m = pos[0];
      prof.pos_y_m = pos[1];
    }
    if (cf.has(p + "traffic")) prof.traffic = cf.get_traffic(p + "traffic");
    profiles.push_back(prof);

    if (cf.has(p + "pathloss_db")) {
      const auto pl = cf.get_array(p + "pathloss_db");
      if (static_cast<int>(pl.size()) != sc.cfg.num_cells)
        throw ConfigError("config: " + p + "pathloss_db needs one entry per cell");
      for (int c = 0; c < sc.cfg.num_cells; ++c)
        pathloss[static_cast<size_t>(c) * sc.cfg.total_ues() + u] = pl[c];
    } else {
      if (static_cast<int>(cx.size()) != sc.cfg.num_cells || cx.size() != cy.size())
        throw ConfigError("config: need cells.x/cells.y or per-UE pathloss_db");
      for (int c = 0; c < sc.cfg.num_cells; ++c) {
        double v = envsim::pathloss_db(
            std::hypot(prof.pos_x_m - cx[c], prof.pos_y_m - cy[c]), exponent);
        if (c != prof.cell_id) v += wall_db * std::abs(c - prof.cell_id);
        pathloss[static_cast<size_t>(c) * sc.cfg.total_ues() + u] = v;
      }
    }
    ++u;
  }

  // Profiles must arrive cell-major for the flat UE indexing.
  std::vector<UEProfile> ordered;
  std::vector<double> ordered_pl(pathloss.size());
  for (int k = 0; k < sc.cfg.num_cells; ++k)
    for (int n = 0; n < sc.cfg.total_ues(); ++n)
      if (profiles[n].cell_id == k) {
        for (int c = 0; c < sc.cfg.num_cells; ++c)
          ordered_pl[static_cast<size_t>(c) * sc.cfg.total_ues() + ordered.size()] =
              pathloss[static_cast<size_t>(c) * sc.cfg.total_ues() + n];
        ordered.push_back(profiles[n]);
      }
  sc.profiles = std::move(ordered);
  sc.radio.pathloss_db = std::move(ordered_pl);

  std::vector<int> counted(sc.cfg.num_cells, 0);
  for (const UEProfile& prof : sc.profiles) ++counted[prof.cell_id];
  if (counted != sc.cfg.ues_per_cell)
    throw ConfigError("config: ue blocks do not match ues_per_cell");
}

}  // namespace

envsim::Scenario scenario_from_config(const std::string& preset,
                                      const std::optional<ConfigFile>& cfg,
                                      const envsim::ScenarioOptions& opt) {
  envsim::Scenario sc;
  if (preset == "lab") {
    sc = envsim::make_lab_scenario(opt);
  } else if (preset == "building") {
    sc = envsim::make_building_scenario(opt);
  } else if (preset.empty()) {
    if (!cfg) throw ConfigError("either a preset or a config file is required");
    sc = envsim::make_lab_scenario(opt);  // defaults; fully overridden below
  } else {
    throw ConfigError("unknown preset: " + preset);
  }
  if (cfg) {
    apply_network_overrides(*cfg, sc.cfg);
    apply_radio_env_overrides(*cfg, sc);
    apply_ue_overrides(*cfg, sc);
  }
  sc.cfg.validate();
  for (const UEProfile& p : sc.profiles) p.validate();
  if (sc.radio.pathloss_db.size() !=
      static_cast<size_t>(sc.cfg.num_cells) * sc.cfg.total_ues())
    throw ConfigError("config: pathloss matrix does not match cells x UEs");
  return sc;
}

agent::LearnerConfig learner_config_for(const envsim::Scenario& sc,
                                        const std::optional<ConfigFile>& cfg) {
  agent::LearnerConfig lc;
  lc.state_dim = sc.cfg.total_ues() * envsim::kFeatCount;
  lc.action_dim = sc.cfg.action_dim();
  lc.gamma = static_cast<float>(sc.cfg.gamma);
  if (cfg) {
    lc.denoise_steps =
        static_cast<int>(cfg->get_long("learner.denoise_steps", lc.denoise_steps));
    lc.eta = static_cast<float>(cfg->get_double("learner.eta", lc.eta));
    lc.rho = static_cast<float>(cfg->get_double("learner.rho", lc.rho));
    lc.lr = static_cast<float>(cfg->get_double("learner.lr", lc.lr));
    lc.batch = static_cast<int>(cfg->get_long("learner.batch", lc.batch));
    lc.capacity = static_cast<size_t>(
        cfg->get_long("learner.capacity", static_cast<long>(lc.capacity)));
    lc.hidden = static_cast<int>(cfg->get_long("learner.hidden", lc.hidden));
    lc.hidden_layers = static_cast<int>(
        cfg->get_long("learner.hidden_layers", lc.hidden_layers));
    lc.emb_dim = static_cast<int>(cfg->get_long("learner.emb_dim", lc.emb_dim));
    lc.reward_scale =
        static_cast<float>(cfg->get_double("learner.reward_scale", lc.reward_scale));
    lc.slots_per_train = static_cast<int>(
        cfg->get_long("learner.slots_per_train", lc.slots_per_train));
  }
  // A sensible default scale: one unit of reward per UE.
  if (lc.reward_scale == 1.0f && sc.cfg.total_ues() > 4)
    lc.reward_scale = static_cast<float>(sc.cfg.total_ues()) / 4.0f;
  return lc;
}

std::string scenario_to_text(const envsim::Scenario& sc) {
  std::ostringstream os;
  os << "# resolved scenario: " << sc.name << "\n";
  os << "num_cells = " << sc.cfg.num_cells << "\n";
  os << "ues_per_cell = [";
  for (size_t i = 0; i < sc.cfg.ues_per_cell.size(); ++i)
    os << (i ? ", " : "") << sc.cfg.ues_per_cell[i];
  os << "]\n";
  os << "num_rbs = " << sc.cfg.num_rbs << "\n";
  os << "num_rb_groups = " << sc.cfg.num_rb_groups << "\n";
  os << "slot_ms = " << sc.cfg.slot_ms << "\n";
  os << "gamma = " << sc.cfg.gamma << "\n";
  auto arr = [&os](const char* k, const std::vector<double>& v) {
    os << k << " = [";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << "]\n";
  };
  arr("lambda_p", sc.cfg.lambda_p);
  arr("lambda_d", sc.cfg.lambda_d);
  os << "env.e2_latency_ms = " << sc.env.e2_latency_ms << "\n";
  os << "env.packet_bytes = " << sc.env.packet_bytes << "\n";
  for (int u = 0; u < sc.cfg.total_ues(); ++u) {
    const UEProfile& p = sc.profiles[u];
    const std::string pre = "ue." + std::to_string(u) + ".";
    os << pre << "cell = " << p.cell_id << "\n";
    os << pre << "tp_demand_bps = " << p.tp_demand_bps << "\n";
    os << pre << "delay_demand_ms = " << p.delay_demand_ms << "\n";
    os << pre << "position = [" << p.pos_x_m << ", " << p.pos_y_m << "]\n";
    os << pre << "pathloss_db = [";
    for (int c = 0; c < sc.cfg.num_cells; ++c)
      os << (c ? ", " : "")
         << sc.radio.pathloss_db[static_cast<size_t>(c) * sc.cfg.total_ues() + u];
    os << "]\n";
    if (!p.traffic.empty()) {
      os << pre << "traffic = [";
      for (size_t i = 0; i < p.traffic.size(); ++i)
        os << (i ? ", " : "") << p.traffic[i].start_ms << ":" << p.traffic[i].rate_bps;
      os << "]\n";
    }
  }
  return os.str();
}

}  // namespace xdiff::cli
