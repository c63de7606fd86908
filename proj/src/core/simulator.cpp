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

#include "core/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "core/assignment.hpp"
#include "core/wire.hpp"

namespace adlift {

namespace {

using Rng = std::mt19937_64;

Rng consumer_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

const char* mode_name(ContaminationMode m) {
  switch (m) {
    case ContaminationMode::none: return "none";
    case ContaminationMode::cross_device_toy: return "cross_device_toy";
    case ContaminationMode::mixed_1d2d: return "mixed_1d2d";
  }
  return "?";
}

const char* grain_name(SimAssignmentGrain g) {
  return g == SimAssignmentGrain::device ? "device" : "consumer";
}

struct Emitter {
  const SimConfig& cfg;
  SimOutput& out;
  std::uint64_t request_counter = 0;

  void opp(const std::string& device_id, std::int64_t t) {
    out.bidopps.push_back(BidOppRecord{{device_id}, t,
                                       "r" + std::to_string(request_counter++), "x1"});
  }

  void impression(const std::string& device_id, std::int64_t t, ImpressionTag tag) {
    out.impressions.push_back(ImpressionRecord{{device_id}, t, cfg.campaign_id, tag});
  }

  void event(const std::string& device_id, std::int64_t t) {
    out.events.push_back(EventRecord{{device_id}, t, cfg.campaign_id});
  }
};

// One opp (plus its impression) per device slot; slots are spaced a full PV
// window apart so each conversion falls in exactly one window.
std::int64_t slot_time(std::int64_t t0, std::int64_t pv_window, int slot) {
  return t0 + static_cast<std::int64_t>(slot) * (pv_window + 1);
}

}  // namespace

void SimConfig::validate() const {
  if (campaign_id.empty()) throw Error(ErrorCode::config, "campaign_id must be non-empty");
  if (!(holdout > 0.0 && holdout < 1.0))
    throw Error(ErrorCode::config, "holdout must be in (0,1)");
  if (pv_window <= 0) throw Error(ErrorCode::config, "pv_window must be positive");
  if (device_dist.empty()) throw Error(ErrorCode::config, "device distribution is empty");
  double total = 0.0;
  for (const auto& e : device_dist) {
    if (e.devices < 1) throw Error(ErrorCode::config, "device counts must be >= 1");
    if (e.prob < 0.0) throw Error(ErrorCode::config, "device probabilities must be >= 0");
    total += e.prob;
  }
  if (std::fabs(total - 1.0) > 1e-9)
    throw Error(ErrorCode::config, "device distribution probabilities must sum to 1");
  if (!(win_rate > 0.0 && win_rate <= 1.0))
    throw Error(ErrorCode::config, "win_rate must be in (0,1]");
  if (!(baseline_rate >= 0.0 && baseline_rate <= 1.0))
    throw Error(ErrorCode::config, "baseline_rate must be in [0,1]");
  if (!(baseline_jitter >= 0.0 && baseline_jitter < 1.0))
    throw Error(ErrorCode::config, "baseline_jitter must be in [0,1)");
  if (winner_baseline_multiplier <= 0.0)
    throw Error(ErrorCode::config, "winner_baseline_multiplier must be positive");
  if (opps_per_device < 1) throw Error(ErrorCode::config, "opps_per_device must be >= 1");
  if (!(background_event_rate >= 0.0 && background_event_rate <= 1.0))
    throw Error(ErrorCode::config, "background_event_rate must be in [0,1]");
  if (true_lift <= -1.0) throw Error(ErrorCode::config, "true_lift must be > -1");
  if (mode == ContaminationMode::none &&
      (device_dist.size() != 1 || device_dist[0].devices != 1))
    throw Error(ErrorCode::config,
                "mode 'none' models one device per consumer; use a contamination mode for "
                "multi-device populations");
  const double top = baseline_rate * (1.0 + baseline_jitter) * winner_baseline_multiplier *
                     (1.0 + std::max(0.0, true_lift));
  if (top > 1.0)
    throw Error(ErrorCode::config, "configured rates exceed 1; lower baseline/lift/multiplier");
}

SimOutput simulate(const SimConfig& cfg) {
  cfg.validate();
  SimOutput out;
  const HashConfig hc{cfg.hash_digits, cfg.salt};
  CampaignConfig campaign;
  campaign.campaign_id = cfg.campaign_id;
  campaign.holdout_fraction = cfg.holdout;
  campaign.pv_window_seconds = cfg.pv_window;
  campaign.hash_digits = cfg.hash_digits;
  campaign.salt = cfg.salt;
  // Keep background-event timestamps non-negative.
  const std::int64_t t0 = cfg.pv_window + 1000;
  Emitter emit{cfg, out};

  std::vector<double> dist_probs;
  for (const auto& e : cfg.device_dist) dist_probs.push_back(e.prob);

  const bool toy_semantics = cfg.mode != ContaminationMode::none;

  out.truth.consumers.reserve(cfg.n_consumers);
  for (std::uint64_t i = 0; i < cfg.n_consumers; ++i) {
    Rng rng = consumer_rng(cfg.seed, i);
    ConsumerTruth truth;
    truth.consumer_id = "c" + std::to_string(i);

    int n_devices = 1;
    if (cfg.device_dist.size() == 1) {
      n_devices = cfg.device_dist[0].devices;
    } else {
      std::discrete_distribution<int> dd(dist_probs.begin(), dist_probs.end());
      n_devices = cfg.device_dist[dd(rng)].devices;
    }
    truth.n_devices = n_devices;

    std::vector<std::string> device_ids(n_devices);
    std::vector<bool> device_in_control(n_devices);
    for (int d = 0; d < n_devices; ++d) {
      device_ids[d] = n_devices == 1 ? "u" + std::to_string(i)
                                     : "u" + std::to_string(i) + "_d" + std::to_string(d);
      out.id_graph.emplace_back(device_ids[d], truth.consumer_id);
    }
    if (cfg.assignment_grain == SimAssignmentGrain::consumer) {
      const bool control = assign(UserId{truth.consumer_id}, cfg.holdout, hc).is_control();
      std::fill(device_in_control.begin(), device_in_control.end(), control);
    } else {
      for (int d = 0; d < n_devices; ++d)
        device_in_control[d] = assign(UserId{device_ids[d]}, cfg.holdout, hc).is_control();
    }
    for (int d = 0; d < n_devices; ++d)
      ++(device_in_control[d] ? truth.n_control_devices : truth.n_test_devices);

    // Per-consumer rates from the generating parameters.
    double baseline = cfg.baseline_rate;
    if (cfg.baseline_jitter > 0.0) {
      std::uniform_real_distribution<double> u(-cfg.baseline_jitter, cfg.baseline_jitter);
      baseline = clamp01(cfg.baseline_rate * (1.0 + u(rng)));
    }

    if (toy_semantics) {
      // 100% win rate: a consumer is exposed iff any device is in Test.
      truth.winner_type = true;
      truth.exposed = truth.n_test_devices > 0;
      truth.rate_unexposed = baseline;
      truth.rate_exposed = clamp01(baseline * (1.0 + cfg.true_lift));
    } else {
      std::bernoulli_distribution wt(cfg.win_rate);
      truth.winner_type = wt(rng);
      truth.exposed = truth.winner_type && truth.n_test_devices > 0;
      truth.rate_unexposed = clamp01(
          baseline * (truth.winner_type ? cfg.winner_baseline_multiplier : 1.0));
      truth.rate_exposed = clamp01(truth.rate_unexposed * (1.0 + cfg.true_lift));
    }

    // Opps and impressions: every opp runs the same pre-bid decision the
    // live bidder would, over the assignment unit's identifier. Winner-type
    // units win all their auctions, loser types none.
    const int opps_per_device = toy_semantics ? 1 : cfg.opps_per_device;
    for (int d = 0; d < n_devices; ++d) {
      const UserId assignment_id{cfg.assignment_grain == SimAssignmentGrain::consumer
                                     ? truth.consumer_id
                                     : device_ids[d]};
      const bool wins = toy_semantics || truth.winner_type;
      const std::optional<bool> outcome =
          device_in_control[d] ? std::nullopt : std::optional<bool>(wins);
      for (int s = 0; s < opps_per_device; ++s) {
        const std::int64_t t = slot_time(t0, cfg.pv_window, s);
        emit.opp(device_ids[d], t);
        emit.impression(device_ids[d], t, prebid_decide(assignment_id, campaign, outcome));
      }
    }

    // Conversions, placed inside the PV window of one of the unit's opps.
    auto place_event = [&](int device, int slot) {
      std::uniform_int_distribution<std::int64_t> off(1, cfg.pv_window);
      emit.event(device_ids[device], slot_time(t0, cfg.pv_window, slot) + off(rng));
    };
    if (toy_semantics) {
      if (truth.exposed) {
        // Type-T: one conversion with probability r_t, equally likely on any device.
        std::bernoulli_distribution conv(truth.rate_exposed);
        if (conv(rng)) {
          std::uniform_int_distribution<int> pick(0, n_devices - 1);
          place_event(pick(rng), 0);
        }
      } else {
        // Type-C: an independent chance on each device.
        std::bernoulli_distribution conv(truth.rate_unexposed / n_devices);
        for (int d = 0; d < n_devices; ++d)
          if (conv(rng)) place_event(d, 0);
      }
    } else {
      const double rate = truth.exposed ? truth.rate_exposed : truth.rate_unexposed;
      std::uint64_t n_conversions = 0;
      if (cfg.poisson_conversions) {
        std::poisson_distribution<std::uint64_t> conv(rate);
        n_conversions = conv(rng);
      } else {
        std::bernoulli_distribution conv(rate);
        n_conversions = conv(rng) ? 1 : 0;
      }
      std::uniform_int_distribution<int> pick(0, opps_per_device - 1);
      for (std::uint64_t n = 0; n < n_conversions; ++n) place_event(0, pick(rng));
    }

    // Background responses that no opp can claim.
    if (cfg.background_event_rate > 0.0) {
      std::bernoulli_distribution bg(cfg.background_event_rate);
      if (bg(rng)) emit.event(device_ids[0], t0 - cfg.pv_window - 10);
    }

    out.truth.consumers.push_back(std::move(truth));
  }

  out.truth.aggregates = aggregate_truth(out.truth.consumers);
  return out;
}

SimOutput simulate_contamination_toy(int devices_per_consumer, double holdout,
                                     double true_lift, std::uint64_t n_consumers,
                                     std::uint64_t seed, SimAssignmentGrain grain,
                                     double baseline_rate) {
  if (devices_per_consumer < 1)
    throw Error(ErrorCode::config, "devices_per_consumer must be >= 1");
  SimConfig cfg;
  cfg.mode = ContaminationMode::cross_device_toy;
  cfg.device_dist = {{devices_per_consumer, 1.0}};
  cfg.holdout = holdout;
  cfg.true_lift = true_lift;
  cfg.n_consumers = n_consumers;
  cfg.seed = seed;
  cfg.assignment_grain = grain;
  cfg.baseline_rate = baseline_rate;
  return simulate(cfg);
}

TruthAggregates aggregate_truth(const std::vector<ConsumerTruth>& rows) {
  TruthAggregates agg;
  agg.n_consumers = rows.size();
  double winner_effect = 0, winner_baseline = 0;
  double exposed_baseline = 0, pool_baseline = 0;
  std::uint64_t n_pool = 0;
  for (const auto& r : rows) {
    if (r.winner_type) {
      ++agg.n_winner_type;
      winner_effect += r.rate_exposed - r.rate_unexposed;
      winner_baseline += r.rate_unexposed;
    }
    if (r.exposed) {
      ++agg.n_exposed;
      exposed_baseline += r.rate_unexposed;
    } else {
      ++n_pool;
      pool_baseline += r.rate_unexposed;
    }
  }
  if (agg.n_winner_type > 0) {
    agg.true_att = winner_effect / static_cast<double>(agg.n_winner_type);
    const double base = winner_baseline / static_cast<double>(agg.n_winner_type);
    agg.true_atl = base > 0 ? agg.true_att / base : 0.0;
  }
  if (agg.n_exposed > 0 && n_pool > 0)
    agg.selection_bias = exposed_baseline / static_cast<double>(agg.n_exposed) -
                         pool_baseline / static_cast<double>(n_pool);
  return agg;
}

std::string truth_summary_json(const SimOutput& out, const SimConfig& cfg) {
  nlohmann::ordered_json j;
  j["campaign_id"] = cfg.campaign_id;
  j["mode"] = mode_name(cfg.mode);
  j["assignment_grain"] = grain_name(cfg.assignment_grain);
  j["seed"] = cfg.seed;
  j["n_consumers"] = out.truth.aggregates.n_consumers;
  j["n_winner_type"] = out.truth.aggregates.n_winner_type;
  j["n_exposed"] = out.truth.aggregates.n_exposed;
  j["true_att"] = out.truth.aggregates.true_att;
  j["true_atl"] = out.truth.aggregates.true_atl;
  j["selection_bias"] = out.truth.aggregates.selection_bias;
  j["holdout"] = cfg.holdout;
  j["pv_window"] = cfg.pv_window;
  j["records"] = {{"bidopps", out.bidopps.size()},
                  {"impressions", out.impressions.size()},
                  {"events", out.events.size()}};
  return j.dump(2);
}

void write_sim_output(const SimOutput& out, const SimConfig& cfg, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create output directory: " + dir);

  auto open = [&](const std::string& name) {
    std::ofstream f(dir + "/" + name, std::ios::binary);
    if (!f) throw Error(ErrorCode::io, "cannot write " + dir + "/" + name);
    return f;
  };

  {
    auto f = open("bidopps.jsonl");
    for (const auto& r : out.bidopps) f << serialize(r) << '\n';
  }
  {
    auto f = open("impressions.jsonl");
    for (const auto& r : out.impressions) f << serialize(r) << '\n';
  }
  {
    auto f = open("events.jsonl");
    for (const auto& r : out.events) f << serialize(r) << '\n';
  }
  {
    auto f = open("truth.csv");
    f << "consumer_id,n_devices,n_test_devices,n_control_devices,winner_type,exposed,"
         "rate_unexposed,rate_exposed\n";
    char buf[64];
    for (const auto& r : out.truth.consumers) {
      f << r.consumer_id << ',' << r.n_devices << ',' << r.n_test_devices << ','
        << r.n_control_devices << ',' << (r.winner_type ? 1 : 0) << ','
        << (r.exposed ? 1 : 0) << ',';
      std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", r.rate_unexposed, r.rate_exposed);
      f << buf;
    }
  }
  {
    auto f = open("truth_summary.json");
    f << truth_summary_json(out, cfg) << '\n';
  }
  if (!out.id_graph.empty()) {
    auto f = open("graph.csv");
    f << "user_id,cid\n";
    for (const auto& [u, c] : out.id_graph) f << u << ',' << c << '\n';
  }
}

}  // namespace adlift
