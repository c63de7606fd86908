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

#include <algorithm>
#include <cmath>
#include <random>

#include "core/estimators.hpp"
#include "core/gibbs.hpp"
#include "test_support.hpp"

using namespace adlift;
using adlift_test::table_from_row;

namespace {

const CountTable kCampaign2 = table_from_row(2195456, 12609, 918316, 8573, 145216, 748);

CountTable small_table() {
  CountTable t;
  t.uniq_tw = 100;
  t.uniq_t = 200;
  t.uniq_c = 100;
  t.tw1 = 30;
  t.tw0 = 70;
  t.tl1 = 10;
  t.tl0 = 90;
  t.c1 = 20;
  t.c0 = 80;
  t.conv_tw = 30;
  t.conv_t = 40;
  t.conv_c = 20;
  return t;
}

}  // namespace

TEST_CASE("initialization matches the observed rates") {
  const ParamVector p = init_params(kCampaign2);
  CHECK(p.w == doctest::Approx(918316.0 / 2195456.0).epsilon(1e-12));
  CHECK(p.w == doctest::Approx(0.4183).epsilon(1e-3));
  CHECK(p.r_tw == doctest::Approx(8573.0 / 918316.0).epsilon(1e-12));
  CHECK(p.r_cw == p.r_tw);
  CHECK(p.r_l == doctest::Approx(4036.0 / 1277140.0).epsilon(1e-12));
}

TEST_CASE("initialization with zero winner responders gives a zero rate") {
  CountTable t = small_table();
  t.tw0 += t.tw1;
  t.conv_tw = 0;
  t.conv_t = t.tl1;
  t.tw1 = 0;
  CHECK(init_params(t).r_tw == 0.0);
}

TEST_CASE("symmetric winner and loser populations initialize w at one half") {
  CountTable t = small_table();
  t.tl1 = t.tw1;
  t.tl0 = t.tw0;
  t.uniq_t = 2 * t.uniq_tw;
  t.conv_t = t.conv_tw + t.tl1;
  CHECK(init_params(t).w == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("initialization requires a winner population") {
  CountTable t;
  t.uniq_c = 10;
  t.c0 = 10;
  CHECK_THROWS_AS(init_params(t), Error);
}

TEST_CASE("empty control yields zero hidden counts") {
  CountTable t = small_table();
  t.c1 = 0;
  t.c0 = 0;
  t.uniq_c = 0;
  t.conv_c = 0;
  Rng rng(1);
  const HiddenCounts h = draw_hidden(t, ParamVector{0.5, 0.1, 0.1, 0.1}, rng);
  CHECK(h.cw1 == 0);
  CHECK(h.cl1 == 0);
  CHECK(h.cw0 == 0);
  CHECK(h.cl0 == 0);
}

TEST_CASE("a win rate of one sends all control responders to the winner side") {
  Rng rng(1);
  const HiddenCounts h = draw_hidden(small_table(), ParamVector{1.0, 0.1, 0.1, 0.1}, rng);
  CHECK(h.cw1 == small_table().c1);
  CHECK(h.cl1 == 0);
}

TEST_CASE("hidden responder split has the mixture mean") {
  CountTable t = small_table();
  t.c1 = 10000;
  t.c0 = 0;
  t.uniq_c = 10000;
  t.conv_c = 10000;
  const ParamVector p{0.5, 0.1, 0.1, 0.1};
  Rng rng(7);
  double total = 0;
  const int reps = 10000;
  for (int i = 0; i < reps; ++i) total += static_cast<double>(draw_hidden(t, p, rng).cw1);
  // success probability is 0.5*0.1 / (0.5*0.1 + 0.5*0.1) = 0.5
  CHECK(std::fabs(total / reps - 5000.0) < 150.0);
}

TEST_CASE("degenerate mixture with control responders present is an error") {
  CountTable t = small_table();
  Rng rng(1);
  CHECK_THROWS_AS(draw_hidden(t, ParamVector{0.5, 0.0, 0.0, 0.0}, rng), Error);
}

TEST_CASE("response-weighted draw reproduces the alternate success probability") {
  CountTable t = small_table();
  t.c0 = 20000;
  t.c1 = 0;
  t.uniq_c = 20000;
  t.conv_c = 0;
  const ParamVector p{0.4, 0.02, 0.02, 0.01};
  // response_weighted: cw0 ~ Binom(c0, (1-w)r_l / ((1-w)r_l + w r_cw))
  const double expect_rw = (0.6 * 0.01) / (0.6 * 0.01 + 0.4 * 0.02);
  // exact: cw0 ~ Binom(c0, w(1-r_cw) / (w(1-r_cw) + (1-w)(1-r_l)))
  const double expect_exact = (0.4 * 0.98) / (0.4 * 0.98 + 0.6 * 0.99);
  Rng rng(5);
  double sum_rw = 0, sum_exact = 0;
  const int reps = 4000;
  for (int i = 0; i < reps; ++i) {
    sum_rw += static_cast<double>(draw_hidden(t, p, rng, Cw0Draw::response_weighted).cw0);
    sum_exact += static_cast<double>(draw_hidden(t, p, rng, Cw0Draw::exact).cw0);
  }
  CHECK(std::fabs(sum_rw / reps - expect_rw * 20000) < 60);
  CHECK(std::fabs(sum_exact / reps - expect_exact * 20000) < 60);
}

TEST_CASE("posterior draws have the conjugate Beta means") {
  // Uniform prior: no data at all.
  CountTable empty;
  HiddenCounts h;
  Rng rng(11);
  double sum = 0;
  const int reps = 100000;
  for (int i = 0; i < reps; ++i) sum += draw_params(empty, h, rng).r_tw;
  CHECK(std::fabs(sum / reps - 0.5) < 0.005);

  CountTable t;
  t.tw1 = 30;
  t.tw0 = 70;
  t.uniq_tw = 100;
  t.uniq_t = 100;
  t.conv_tw = 30;
  t.conv_t = 30;
  double sum2 = 0;
  const int reps2 = 20000;
  for (int i = 0; i < reps2; ++i) sum2 += draw_params(t, h, rng).r_tw;
  CHECK(std::fabs(sum2 / reps2 - 31.0 / 102.0) < 0.01);
}

TEST_CASE("equal seeds give identical draw sequences") {
  const CountTable t = small_table();
  const ParamVector p = init_params(t);
  Rng a(42), b(42);
  for (int i = 0; i < 50; ++i) {
    const HiddenCounts ha = draw_hidden(t, p, a);
    const HiddenCounts hb = draw_hidden(t, p, b);
    CHECK(ha.cw1 == hb.cw1);
    CHECK(ha.cw0 == hb.cw0);
    const ParamVector pa = draw_params(t, ha, a);
    const ParamVector pb = draw_params(t, hb, b);
    CHECK(pa.w == pb.w);
    CHECK(pa.r_cw == pb.r_cw);
  }
}

TEST_CASE("campaign 2 posterior intervals match the golden reference table") {
  GibbsConfig cfg;
  cfg.seed = 20260809;
  const GibbsResult r = run_chain(kCampaign2, cfg);
  CHECK(std::fabs(r.atl_p5 * 100 - 7.0) <= 3.0);
  CHECK(std::fabs(r.atl_p50 * 100 - 18.0) <= 3.0);
  CHECK(std::fabs(r.atl_p95 * 100 - 30.0) <= 3.0);
  CHECK(r.g_conf >= 0.995);
  // Sanity check from the procedure: the posterior ATT mean tracks the point
  // estimate, and the posterior w mean tracks the observed win rate.
  const LiftEstimate e = point_estimates(kCampaign2, CountMode::responders);
  double att_mean = 0;
  for (double v : r.att_draws) att_mean += v;
  att_mean /= static_cast<double>(r.att_draws.size());
  CHECK(att_mean > r.att_p5);
  CHECK(att_mean < r.att_p95);
  CHECK(std::fabs(att_mean - e.att) < 3e-4);
  CHECK(std::fabs(r.param_means.w - e.w) < 0.01);
}

TEST_CASE("percentiles are ordered and reproducible bit for bit") {
  GibbsConfig cfg;
  cfg.burn_in = 200;
  cfg.samples = 500;
  cfg.seed = 9;
  const GibbsResult a = run_chain(small_table(), cfg);
  const GibbsResult b = run_chain(small_table(), cfg);
  CHECK(a.atl_p5 <= a.atl_p50);
  CHECK(a.atl_p50 <= a.atl_p95);
  CHECK(a.att_p5 <= a.att_p50);
  CHECK(a.att_p50 <= a.att_p95);
  CHECK(a.atl_draws == b.atl_draws);
  CHECK(a.att_draws == b.att_draws);
  CHECK(a.g_conf == b.g_conf);
}

TEST_CASE("different seeds give different draws") {
  GibbsConfig a, b;
  a.burn_in = b.burn_in = 50;
  a.samples = b.samples = 50;
  a.seed = 1;
  b.seed = 2;
  CHECK(run_chain(small_table(), a).atl_draws != run_chain(small_table(), b).atl_draws);
}

TEST_CASE("a single recorded draw degenerates the percentiles") {
  GibbsConfig cfg;
  cfg.burn_in = 10;
  cfg.samples = 1;
  const GibbsResult r = run_chain(small_table(), cfg);
  CHECK(r.atl_p5 == r.atl_p50);
  CHECK(r.atl_p50 == r.atl_p95);
}

TEST_CASE("multiple chains concatenate deterministically") {
  GibbsConfig cfg;
  cfg.burn_in = 100;
  cfg.samples = 200;
  cfg.chains = 3;
  cfg.seed = 77;
  const GibbsResult a = run_chain(small_table(), cfg);
  const GibbsResult b = run_chain(small_table(), cfg);
  REQUIRE(a.atl_draws.size() == 600);
  CHECK(a.atl_draws == b.atl_draws);
  // Chains differ from one another.
  std::vector<double> first(a.atl_draws.begin(), a.atl_draws.begin() + 200);
  std::vector<double> second(a.atl_draws.begin() + 200, a.atl_draws.begin() + 400);
  CHECK(first != second);
}

TEST_CASE("null-effect table centers the lift posterior at zero") {
  // Control rates equal test-winner rates by construction at 1e5-unit scale.
  CountTable t;
  t.uniq_tw = 50000;
  t.uniq_t = 100000;
  t.uniq_c = 50000;
  t.tw1 = 500;
  t.tw0 = 49500;
  t.tl1 = 250;
  t.tl0 = 49750;
  // Control mixes winner types at 1% and loser types at 0.5% with w = 0.5.
  t.c1 = 375;
  t.c0 = 49625;
  t.conv_tw = t.tw1;
  t.conv_t = t.tw1 + t.tl1;
  t.conv_c = t.c1;
  GibbsConfig cfg;
  cfg.seed = 5;
  const GibbsResult r = run_chain(t, cfg);
  CHECK(std::fabs(r.atl_p50) < 0.02);
  CHECK(r.g_conf == doctest::Approx(0.5).epsilon(0.12));
}

TEST_CASE("split-half medians agree after burn-in") {
  GibbsConfig cfg;
  cfg.seed = 13;
  const GibbsResult r = run_chain(kCampaign2, cfg);
  const std::size_t half = r.atl_draws.size() / 2;
  std::vector<double> a(r.atl_draws.begin(), r.atl_draws.begin() + half);
  std::vector<double> b(r.atl_draws.begin() + half, r.atl_draws.end());
  const double med_a = percentile(a, 0.5);
  const double med_b = percentile(b, 0.5);
  const double iqr = percentile(r.atl_draws, 0.75) - percentile(r.atl_draws, 0.25);
  CHECK(std::fabs(med_a - med_b) < 0.1 * iqr);
}

TEST_CASE("percentile interpolates linearly between order statistics") {
  const std::vector<double> v{10.0, 20.0, 30.0, 40.0};
  CHECK(percentile(v, 0.0) == 10.0);
  CHECK(percentile(v, 1.0) == 40.0);
  CHECK(percentile(v, 0.5) == doctest::Approx(25.0));
  CHECK(percentile(v, 0.25) == doctest::Approx(17.5));
}

TEST_CASE("normal cdf reference values") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(normal_cdf(2.0) == doctest::Approx(0.9772498680518208).epsilon(1e-9));
  CHECK(normal_cdf(-2.0) == doctest::Approx(1 - 0.9772498680518208).epsilon(1e-9));
}
