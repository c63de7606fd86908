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

#include <doctest.h>

#include "core/config.hpp"

using namespace adlift;

TEST_CASE("flat key-value text parses with comments and spacing") {
  KeyValueConfig kv;
  kv.parse_text(
      "# campaign settings\n"
      "campaign_id = camp-7\n"
      "holdout_fraction=0.2   # inline comment\n"
      "\n"
      "gibbs.samples = 500\n");
  CHECK(kv.get_or("campaign_id", "") == "camp-7");
  CHECK(kv.get_double("holdout_fraction", 0) == doctest::Approx(0.2));
  CHECK(kv.get_int("gibbs.samples", 0) == 500);
  CHECK(!kv.get("missing").has_value());
}

TEST_CASE("malformed lines and values raise config errors") {
  KeyValueConfig kv;
  CHECK_THROWS_AS(kv.parse_text("just-a-token\n"), Error);
  kv.set("x", "abc");
  CHECK_THROWS_AS(kv.get_double("x", 0), Error);
  CHECK_THROWS_AS(kv.get_int("x", 0), Error);
  CHECK_THROWS_AS(kv.get_bool("x", false), Error);
}

TEST_CASE("later settings override earlier ones") {
  KeyValueConfig kv;
  kv.parse_text("grain = userid\n");
  kv.set("grain", "cid");
  CHECK(kv.get_or("grain", "") == "cid");
}

TEST_CASE("analysis options resolve defaults and overrides") {
  KeyValueConfig kv;
  kv.parse_text(
      "campaign_id = c9\n"
      "holdout_fraction = 0.25\n"
      "pv_window_seconds = 3600\n"
      "grain = cid\n"
      "count_mode = responders\n"
      "min_degree = 3\n"
      "gibbs.burn_in = 50\n"
      "gibbs.seed = 99\n"
      "gibbs.cw0_draw = response_weighted\n");
  const AnalysisOptions o = analysis_options_from_config(kv);
  CHECK(o.campaign.campaign_id == "c9");
  CHECK(o.campaign.holdout_fraction == doctest::Approx(0.25));
  CHECK(o.campaign.pv_window_seconds == 3600);
  CHECK(o.campaign.salt == "c9");  // defaults to the campaign id
  CHECK(o.grain == Grain::cid);
  CHECK(o.count_mode == CountMode::responders);
  CHECK(o.min_degree == 3);
  CHECK(o.gibbs.burn_in == 50);
  CHECK(o.gibbs.samples == 2000);
  CHECK(o.gibbs.seed == 99);
  CHECK(o.gibbs.cw0_draw == Cw0Draw::response_weighted);
}

TEST_CASE("defaults match the standard sampling procedure") {
  KeyValueConfig kv;
  const AnalysisOptions o = analysis_options_from_config(kv);
  CHECK(o.gibbs.burn_in == 1000);
  CHECK(o.gibbs.samples == 2000);
  CHECK(o.gibbs.chains == 1);
  CHECK(o.gibbs.cw0_draw == Cw0Draw::exact);
  CHECK(o.count_mode == CountMode::conversions);
  CHECK(o.min_degree == 2);
  CHECK(o.run_gibbs);
}

TEST_CASE("invalid enum values are config errors") {
  KeyValueConfig kv;
  kv.set("grain", "household");
  CHECK_THROWS_AS(analysis_options_from_config(kv), Error);
  KeyValueConfig kv2;
  kv2.set("count_mode", "clicks");
  CHECK_THROWS_AS(analysis_options_from_config(kv2), Error);
  KeyValueConfig kv3;
  kv3.set("gibbs.cw0_draw", "wrong");
  CHECK_THROWS_AS(analysis_options_from_config(kv3), Error);
}

TEST_CASE("sim config parses the device distribution string") {
  KeyValueConfig kv;
  kv.parse_text(
      "sim.n_consumers = 1000\n"
      "sim.mode = mixed_1d2d\n"
      "sim.device_distribution = 1:0.25,2:0.75\n"
      "sim.true_lift = 0.3\n"
      "sim.seed = 4\n");
  const SimConfig s = sim_config_from_config(kv);
  CHECK(s.n_consumers == 1000);
  CHECK(s.mode == ContaminationMode::mixed_1d2d);
  REQUIRE(s.device_dist.size() == 2);
  CHECK(s.device_dist[0].devices == 1);
  CHECK(s.device_dist[0].prob == doctest::Approx(0.25));
  CHECK(s.device_dist[1].devices == 2);
  CHECK(s.device_dist[1].prob == doctest::Approx(0.75));
  CHECK(s.true_lift == doctest::Approx(0.3));
  CHECK(s.seed == 4);
}

TEST_CASE("bare device count means a constant distribution") {
  KeyValueConfig kv;
  kv.set("sim.device_distribution", "3");
  const SimConfig s = sim_config_from_config(kv);
  REQUIRE(s.device_dist.size() == 1);
  CHECK(s.device_dist[0].devices == 3);
  CHECK(s.device_dist[0].prob == doctest::Approx(1.0));
}
