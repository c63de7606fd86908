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
#include <optional>

#include "core/count_table.hpp"

namespace adlift {

// Which per-unit response enters the rates: binary responders (the Gibbs
// model's semantics) or total attributed conversions.
enum class CountMode : std::uint8_t { responders, conversions };

inline const char* count_mode_name(CountMode m) {
  return m == CountMode::responders ? "responders" : "conversions";
}

// Point estimates of the causal quantities, all full precision. Identities:
//   ace = r_t - r_c,  att * w = ace,  r_cw_inferred = r_tw - att,
//   atl = att / r_cw_inferred,  inc = att / r_tw.
struct LiftEstimate {
  CountMode mode = CountMode::conversions;
  double r_t = 0, r_c = 0, r_tw = 0;
  std::optional<double> r_tl;  // absent when there are no Test-loss units
  double w = 0;
  double ace = 0;
  double att = 0;
  double r_cw_inferred = 0;
  double atl = 0;
  double inc = 0;
};

LiftEstimate point_estimates(const CountTable& t, CountMode mode);

// Naive exposed-vs-unexposed rate difference, pooling Control with Test-loss
// units. Differs from ATT by the selection (win) bias.
double standard_estimator(const CountTable& t, CountMode mode);

// Estimates for post-bid randomized data: everyone assigned to Test is
// exposed, so w = 1 and the control rate is the counterfactual baseline.
LiftEstimate postbid_estimates(const CountTable& t, CountMode mode);

// Display rounding: half away from zero.
long long round_half_away(double x);

// Rates as displayed in reports (basis points for rates and ATT, percent for
// ratios), rounded to integers.
struct DisplayEstimate {
  long long r_t_bp = 0, r_c_bp = 0, r_tw_bp = 0;
  long long att_bp = 0;
  long long atl_pct = 0, inc_pct = 0;
  long long w_pct = 0;
};
DisplayEstimate display_estimate(const LiftEstimate& e);

// The same quantities computed sequentially from already-rounded display
// integers (ace = R_T - R_C in whole bp, att = ace / w at whole percent, and
// so on). Summary tables are often quoted with this chain; at small rates it
// can differ from rounding the full-precision values by one display unit.
struct RoundedChain {
  long long r_t_bp = 0, r_c_bp = 0, r_tw_bp = 0;
  long long w_pct = 0;
  long long ace_bp = 0;
  long long att_bp = 0;
  long long r_cw_bp = 0;
  std::optional<long long> atl_pct;  // absent when r_cw_bp <= 0
  std::optional<long long> inc_pct;  // absent when r_tw_bp <= 0
};
RoundedChain rounded_chain(const LiftEstimate& e);

}  // namespace adlift
