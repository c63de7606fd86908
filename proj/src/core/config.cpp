// Copyright 2026 The Adlift Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace adlift {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw Error(ErrorCode::config, "config key must be non-empty");
  entries_[key] = value;
}

void KeyValueConfig::parse_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::config,
                  "config line " + std::to_string(line_no) + ": expected 'key = value'");
    set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
}

void KeyValueConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  parse_text(buf.str());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key, const std::string& fallback) const {
  return get(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    double d = std::stod(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument("");
    return d;
  } catch (const std::exception&) {
    throw Error(ErrorCode::config, "config key '" + key + "': not a number: '" + *v + "'");
  }
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size())
    throw Error(ErrorCode::config, "config key '" + key + "': not an integer: '" + *v + "'");
  return out;
}

std::uint64_t KeyValueConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc{} || ptr != v->data() + v->size())
    throw Error(ErrorCode::config,
                "config key '" + key + "': not a non-negative integer: '" + *v + "'");
  return out;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
  auto v = get(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw Error(ErrorCode::config, "config key '" + key + "': not a boolean: '" + *v + "'");
}

Grain grain_from_name(const std::string& s) {
  if (s == "userid" || s == "userID" || s == "user_id") return Grain::user_id;
  if (s == "cid") return Grain::cid;
  throw Error(ErrorCode::config, "grain must be 'userid' or 'cid', got '" + s + "'");
}

CountMode count_mode_from_name(const std::string& s) {
  if (s == "conversions") return CountMode::conversions;
  if (s == "responders") return CountMode::responders;
  throw Error(ErrorCode::config,
              "count_mode must be 'conversions' or 'responders', got '" + s + "'");
}

AnalysisOptions analysis_options_from_config(const KeyValueConfig& cfg) {
  AnalysisOptions o;
  o.campaign.campaign_id = cfg.get_or("campaign_id", "campaign");
  o.campaign.holdout_fraction = cfg.get_double("holdout_fraction", 0.1);
  o.campaign.pv_window_seconds = cfg.get_int("pv_window_seconds", 86400);
  o.campaign.hash_digits = static_cast<int>(cfg.get_int("hash_digits", 4));
  o.campaign.salt = cfg.get_or("salt", o.campaign.campaign_id);
  o.campaign.validate();
  o.grain = grain_from_name(cfg.get_or("grain", "userid"));
  o.count_mode = count_mode_from_name(cfg.get_or("count_mode", "conversions"));
  o.min_degree = static_cast<int>(cfg.get_int("min_degree", 2));
  if (o.min_degree < 1) throw Error(ErrorCode::config, "min_degree must be >= 1");
  o.gibbs.burn_in = static_cast<int>(cfg.get_int("gibbs.burn_in", 1000));
  o.gibbs.samples = static_cast<int>(cfg.get_int("gibbs.samples", 2000));
  o.gibbs.chains = static_cast<int>(cfg.get_int("gibbs.chains", 1));
  o.gibbs.seed = cfg.get_uint("gibbs.seed", 1);
  const std::string cw0 = cfg.get_or("gibbs.cw0_draw", "exact");
  if (cw0 == "exact") {
    o.gibbs.cw0_draw = Cw0Draw::exact;
  } else if (cw0 == "response_weighted") {
    o.gibbs.cw0_draw = Cw0Draw::response_weighted;
  } else {
    throw Error(ErrorCode::config,
                "gibbs.cw0_draw must be 'exact' or 'response_weighted', got '" + cw0 + "'");
  }
  o.gibbs.validate();
  o.run_gibbs = cfg.get_bool("gibbs.enabled", true);
  o.workers = static_cast<unsigned>(cfg.get_int("workers", 1));
  if (o.workers < 1) throw Error(ErrorCode::config, "workers must be >= 1");
  return o;
}

SimConfig sim_config_from_config(const KeyValueConfig& cfg) {
  SimConfig s;
  s.campaign_id = cfg.get_or("campaign_id", "sim");
  s.n_consumers = cfg.get_uint("sim.n_consumers", 0);
  s.holdout = cfg.get_double("sim.holdout", cfg.get_double("holdout_fraction", 0.1));
  s.pv_window = cfg.get_int("sim.pv_window_seconds", cfg.get_int("pv_window_seconds", 86400));
  s.true_lift = cfg.get_double("sim.true_lift", 0.0);
  s.win_rate = cfg.get_double("sim.win_rate", 1.0);
  s.baseline_rate = cfg.get_double("sim.baseline_rate", 0.01);
  s.baseline_jitter = cfg.get_double("sim.baseline_jitter", 0.0);
  s.winner_baseline_multiplier = cfg.get_double("sim.winner_baseline_multiplier", 1.0);
  s.opps_per_device = static_cast<int>(cfg.get_int("sim.opps_per_device", 1));
  s.background_event_rate = cfg.get_double("sim.background_event_rate", 0.0);
  s.poisson_conversions = cfg.get_bool("sim.poisson_conversions", false);
  s.seed = cfg.get_uint("sim.seed", 1);
  s.hash_digits = static_cast<int>(cfg.get_int("hash_digits", 4));
  s.salt = cfg.get_or("salt", "sim");

  const std::string mode = cfg.get_or("sim.mode", "none");
  if (mode == "none") {
    s.mode = ContaminationMode::none;
  } else if (mode == "cross_device_toy") {
    s.mode = ContaminationMode::cross_device_toy;
  } else if (mode == "mixed_1d2d") {
    s.mode = ContaminationMode::mixed_1d2d;
  } else {
    throw Error(ErrorCode::config, "sim.mode must be one of none, cross_device_toy, "
                                   "mixed_1d2d; got '" + mode + "'");
  }
  const std::string grain = cfg.get_or("sim.assignment_grain", "device");
  if (grain == "device") {
    s.assignment_grain = SimAssignmentGrain::device;
  } else if (grain == "consumer") {
    s.assignment_grain = SimAssignmentGrain::consumer;
  } else {
    throw Error(ErrorCode::config,
                "sim.assignment_grain must be 'device' or 'consumer', got '" + grain + "'");
  }

  // "k:prob,k:prob"; a bare integer means that many devices for everyone.
  if (auto dist = cfg.get("sim.device_distribution")) {
    s.device_dist.clear();
    std::istringstream in(*dist);
    std::string part;
    while (std::getline(in, part, ',')) {
      auto colon = part.find(':');
      try {
        if (colon == std::string::npos) {
          s.device_dist.push_back({std::stoi(part), 1.0});
        } else {
          s.device_dist.push_back(
              {std::stoi(part.substr(0, colon)), std::stod(part.substr(colon + 1))});
        }
      } catch (const std::exception&) {
        throw Error(ErrorCode::config,
                    "sim.device_distribution: expected 'k:prob[,k:prob...]', got '" + *dist + "'");
      }
    }
  }
  return s;
}

}  // namespace adlift
