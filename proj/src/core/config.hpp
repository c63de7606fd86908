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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "core/attribution.hpp"
#include "core/estimators.hpp"
#include "core/gibbs.hpp"
#include "core/records.hpp"
#include "core/simulator.hpp"

namespace adlift {

// Flat `key = value` campaign configuration ('#' starts a comment). One file
// per campaign; CLI flags override file values.
class KeyValueConfig {
 public:
  void set(const std::string& key, const std::string& value);
  void load_file(const std::string& path);
  void parse_text(const std::string& text);

  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

  // Typed getters; throw ErrorCode::config with the key name on bad values.
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

 private:
  std::map<std::string, std::string> entries_;
};

// Everything cmd_analyze needs, resolved from config + flag overrides.
struct AnalysisOptions {
  CampaignConfig campaign;
  Grain grain = Grain::user_id;
  CountMode count_mode = CountMode::conversions;
  int min_degree = 2;
  GibbsConfig gibbs;
  bool run_gibbs = true;
  unsigned workers = 1;
};

AnalysisOptions analysis_options_from_config(const KeyValueConfig& cfg);
SimConfig sim_config_from_config(const KeyValueConfig& cfg);

Grain grain_from_name(const std::string& s);
CountMode count_mode_from_name(const std::string& s);

}  // namespace adlift
