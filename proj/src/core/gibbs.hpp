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
#include <random>
#include <vector>

#include "core/count_table.hpp"

namespace adlift {

// The four unknown probability parameters: win rate and the response rates
// of the Test-winner, Control-winner, and loser populations.
struct ParamVector {
  double w = 0;
  double r_tw = 0;
  double r_cw = 0;
  double r_l = 0;
};

// Success probability used to impute the Control non-responder split.
//
// `exact` is the posterior conditional P(winner-type | control
// non-responder), whose weights are the non-response probabilities
// w(1-R_CW) and (1-w)(1-R_L). `response_weighted` instead reuses the
// response-rate weights (1-w)R_L / [(1-w)R_L + w R_CW]; it is retained for
// comparison because the draw is sometimes stated that way,
// but it skews the imputation badly whenever the Control group is large, so
// `exact` is the default.
enum class Cw0Draw : std::uint8_t { exact, response_weighted };

struct GibbsConfig {
  int burn_in = 1000;   // N
  int samples = 2000;   // k, recorded per chain
  std::uint64_t seed = 1;
  int chains = 1;
  Cw0Draw cw0_draw = Cw0Draw::exact;

  void validate() const {
    if (burn_in < 1) throw Error(ErrorCode::config, "burn_in must be >= 1");
    if (samples < 1) throw Error(ErrorCode::config, "samples must be >= 1");
    if (chains < 1) throw Error(ErrorCode::config, "chains must be >= 1");
  }
};

struct GibbsResult {
  std::vector<double> att_draws;  // length samples * chains, chain order
  std::vector<double> atl_draws;
  std::vector<double> w_draws, r_tw_draws, r_cw_draws, r_l_draws;
  double att_p5 = 0, att_p50 = 0, att_p95 = 0;
  double atl_p5 = 0, atl_p50 = 0, atl_p95 = 0;
  double g_conf = 0;          // fitted-Gaussian mass of ATL above zero
  ParamVector param_means;    // post-burn-in means
};

using Rng = std::mt19937_64;

// Starting point from the observed counts; R_CW starts at the observed
// Test-winner rate. When there are no Test-loss units (100% win rate) R_L
// has no direct observations and also starts at the Test-winner rate.
ParamVector init_params(const CountTable& t);

// Step 1 of an iteration: impute the latent Control winner/loser split
// given the current parameters.
HiddenCounts draw_hidden(const CountTable& t, const ParamVector& p, Rng& rng,
                         Cw0Draw cw0 = Cw0Draw::exact);

// Step 2: draw the parameters from their Beta posteriors (Beta(1,1) priors)
// given observed and imputed counts.
ParamVector draw_params(const CountTable& t, const HiddenCounts& h, Rng& rng);

// Full run: burn-in then recorded sweeps per chain, chains merged in order.
// Deterministic for a fixed (table, config) pair.
GibbsResult run_chain(const CountTable& t, const GibbsConfig& cfg);

// Linear interpolation between order statistics on a sorted copy.
double percentile(const std::vector<double>& values, double q);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace adlift
