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
#include <string>
#include <vector>

#include "core/records.hpp"

namespace adlift {

enum class ContaminationMode : std::uint8_t { none, cross_device_toy, mixed_1d2d };

// Whether the Test/Control hash runs on the device userID (so one consumer's
// devices can straddle arms) or on the consumer ID (contamination-free,
// equivalent to a complete Connected-ID assignment).
enum class SimAssignmentGrain : std::uint8_t { device, consumer };

struct DeviceDistEntry {
  int devices = 1;
  double prob = 1.0;
};

struct SimConfig {
  std::string campaign_id = "sim";
  std::uint64_t n_consumers = 0;
  double holdout = 0.1;            // control probability p
  std::int64_t pv_window = 86400;  // seconds
  std::vector<DeviceDistEntry> device_dist = {{1, 1.0}};
  double true_lift = 0.0;          // a: per-consumer lift over the unexposed baseline
  double win_rate = 1.0;           // probability a consumer is a winner type (mode none)
  double baseline_rate = 0.01;     // unexposed conversion probability r_c
  double baseline_jitter = 0.0;    // relative half-width of per-consumer baseline spread
  double winner_baseline_multiplier = 1.0;  // >1 injects auction selection bias
  int opps_per_device = 1;
  double background_event_rate = 0.0;  // chance of an extra event outside every PV window
  bool poisson_conversions = false;    // per-unit conversion totals instead of a binary response
  std::uint64_t seed = 1;
  ContaminationMode mode = ContaminationMode::none;
  SimAssignmentGrain assignment_grain = SimAssignmentGrain::device;
  int hash_digits = 4;
  std::string salt = "sim";

  void validate() const;
};

// Generating-parameter truth for one consumer; aggregates are recomputable
// from these rows.
struct ConsumerTruth {
  std::string consumer_id;
  int n_devices = 0;
  int n_test_devices = 0;
  int n_control_devices = 0;
  bool winner_type = false;
  bool exposed = false;          // would see at least one ad under its assignment
  double rate_unexposed = 0.0;   // conversion probability with no exposure
  double rate_exposed = 0.0;     // conversion probability when exposed
};

struct TruthAggregates {
  std::uint64_t n_consumers = 0;
  std::uint64_t n_winner_type = 0;
  std::uint64_t n_exposed = 0;
  double true_att = 0.0;         // mean(rate_exposed - rate_unexposed) over winner types
  double true_atl = 0.0;         // true_att over the winner-type unexposed baseline
  double selection_bias = 0.0;   // baseline gap between exposed units and the unexposed pool
};

struct CampaignTruth {
  std::vector<ConsumerTruth> consumers;
  TruthAggregates aggregates;
};

struct SimOutput {
  std::vector<BidOppRecord> bidopps;
  std::vector<ImpressionRecord> impressions;
  std::vector<EventRecord> events;
  // Device -> consumer edges; complete by construction for multi-device modes.
  std::vector<std::pair<std::string, std::string>> id_graph;
  CampaignTruth truth;
};

// Generates the three log streams plus ground truth. Deterministic for a
// fixed config: per-consumer RNG streams are derived from (seed, index) and
// output is ordered by consumer index.
SimOutput simulate(const SimConfig& cfg);

// The cross-device toy scenario: exactly k devices per consumer, 100% win
// rate, a type-T consumer converts once with probability r_c(1+a) on a
// uniformly chosen device, a type-C consumer converts independently on each
// device with probability r_c/k.
SimOutput simulate_contamination_toy(int devices_per_consumer, double holdout,
                                     double true_lift, std::uint64_t n_consumers,
                                     std::uint64_t seed,
                                     SimAssignmentGrain grain = SimAssignmentGrain::device,
                                     double baseline_rate = 0.02);

// Recomputes aggregates from per-consumer rows (the single source of truth).
TruthAggregates aggregate_truth(const std::vector<ConsumerTruth>& rows);

// File outputs: three JSONL logs, truth.csv, truth_summary.json and, for
// multi-device modes, graph.csv.
void write_sim_output(const SimOutput& out, const SimConfig& cfg,
                      const std::string& dir);

std::string truth_summary_json(const SimOutput& out, const SimConfig& cfg);

}  // namespace adlift
