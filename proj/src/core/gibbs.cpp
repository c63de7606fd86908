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

#include "core/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace adlift {

namespace {

std::uint64_t binomial_draw(std::uint64_t n, double p, Rng& rng) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::binomial_distribution<std::uint64_t> dist(n, p);
  return dist(rng);
}

double beta_draw(double alpha, double beta, Rng& rng) {
  std::gamma_distribution<double> ga(alpha, 1.0);
  std::gamma_distribution<double> gb(beta, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  const double s = x + y;
  if (s <= 0.0) return 0.5;  // both underflowed to zero; alpha,beta >= 1 makes this ~impossible
  return x / s;
}

struct ChainAccumulator {
  std::vector<double> att;
  std::vector<double> atl;
  std::vector<double> w, r_tw, r_cw, r_l;
};

ChainAccumulator run_one_chain(const CountTable& t, const GibbsConfig& cfg,
                               int chain_index) {
  // Chain seeds derive from the base seed by a counter. seed_seq keeps only
  // 32 bits per word, so the 64-bit seed is split.
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(chain_index)};
  Rng rng(seq);

  ParamVector p = init_params(t);
  ChainAccumulator acc;
  acc.att.reserve(cfg.samples);
  acc.atl.reserve(cfg.samples);

  const int total = cfg.burn_in + cfg.samples;
  for (int i = 0; i < total; ++i) {
    const HiddenCounts h = draw_hidden(t, p, rng, cfg.cw0_draw);
    p = draw_params(t, h, rng);
    if (i < cfg.burn_in) continue;
    // Beta posteriors put zero mass on r_cw == 0; redraw the underflow case
    // so the lift ratio stays finite.
    int guard = 0;
    while (p.r_cw == 0.0 && guard++ < 64)
      p.r_cw = beta_draw(1.0 + static_cast<double>(h.cw1),
                         1.0 + static_cast<double>(h.cw0), rng);
    if (p.r_cw == 0.0)
      throw Error(ErrorCode::degenerate_probability,
                  "r_cw draw underflowed to zero repeatedly");
    const double att = p.r_tw - p.r_cw;
    acc.att.push_back(att);
    acc.atl.push_back(att / p.r_cw);
    acc.w.push_back(p.w);
    acc.r_tw.push_back(p.r_tw);
    acc.r_cw.push_back(p.r_cw);
    acc.r_l.push_back(p.r_l);
  }
  return acc;
}

}  // namespace

ParamVector init_params(const CountTable& t) {
  const std::uint64_t n_tw = t.tw0 + t.tw1;
  const std::uint64_t n_tl = t.tl0 + t.tl1;
  if (n_tw == 0)
    throw Error(ErrorCode::empty_population,
                "cannot initialize sampler: no Test-Winner units");
  ParamVector p;
  p.w = static_cast<double>(n_tw) / static_cast<double>(n_tw + n_tl);
  p.r_tw = static_cast<double>(t.tw1) / static_cast<double>(n_tw);
  p.r_cw = p.r_tw;
  p.r_l = n_tl > 0 ? static_cast<double>(t.tl1) / static_cast<double>(n_tl) : p.r_tw;
  return p;
}

HiddenCounts draw_hidden(const CountTable& t, const ParamVector& p, Rng& rng,
                         Cw0Draw cw0) {
  HiddenCounts h;
  const double win_mass = p.w * p.r_cw;
  const double lose_mass = (1.0 - p.w) * p.r_l;
  const double responder_denom = win_mass + lose_mass;
  if (t.c1 > 0) {
    if (responder_denom <= 0.0)
      throw Error(ErrorCode::degenerate_probability,
                  "control responders present but both mixture terms are zero");
    h.cw1 = binomial_draw(t.c1, win_mass / responder_denom, rng);
  }
  h.cl1 = t.c1 - h.cw1;

  if (t.c0 > 0) {
    double p0;
    if (cw0 == Cw0Draw::exact) {
      const double win_nr = p.w * (1.0 - p.r_cw);
      const double lose_nr = (1.0 - p.w) * (1.0 - p.r_l);
      const double d = win_nr + lose_nr;
      if (d <= 0.0)
        throw Error(ErrorCode::degenerate_probability,
                    "control non-responders present but both mixture terms are zero");
      p0 = win_nr / d;
    } else {
      if (responder_denom <= 0.0)
        throw Error(ErrorCode::degenerate_probability,
                    "control non-responders present but both mixture terms are zero");
      p0 = lose_mass / responder_denom;
    }
    h.cw0 = binomial_draw(t.c0, p0, rng);
  }
  h.cl0 = t.c0 - h.cw0;
  return h;
}

ParamVector draw_params(const CountTable& t, const HiddenCounts& h, Rng& rng) {
  const double cw1 = static_cast<double>(h.cw1);
  const double cw0 = static_cast<double>(h.cw0);
  const double cl1 = static_cast<double>(h.cl1);
  const double cl0 = static_cast<double>(h.cl0);
  const double tw1 = static_cast<double>(t.tw1);
  const double tw0 = static_cast<double>(t.tw0);
  const double tl1 = static_cast<double>(t.tl1);
  const double tl0 = static_cast<double>(t.tl0);
  ParamVector p;
  p.w = beta_draw(1.0 + cw1 + cw0 + tw1 + tw0, 1.0 + cl1 + cl0 + tl1 + tl0, rng);
  p.r_tw = beta_draw(1.0 + tw1, 1.0 + tw0, rng);
  p.r_cw = beta_draw(1.0 + cw1, 1.0 + cw0, rng);
  p.r_l = beta_draw(1.0 + cl1 + tl1, 1.0 + cl0 + tl0, rng);
  return p;
}

double percentile(const std::vector<double>& values, double q) {
  if (values.empty()) throw Error(ErrorCode::domain, "percentile of empty sample");
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.size() == 1) return sorted[0];
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - std::floor(h);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

GibbsResult run_chain(const CountTable& t, const GibbsConfig& cfg) {
  cfg.validate();
  require_valid(t);

  std::vector<ChainAccumulator> parts(cfg.chains);
  if (cfg.chains == 1) {
    parts[0] = run_one_chain(t, cfg, 0);
  } else {
    std::vector<std::future<ChainAccumulator>> futures;
    futures.reserve(cfg.chains);
    for (int c = 0; c < cfg.chains; ++c)
      futures.push_back(std::async(std::launch::async,
                                   [&, c] { return run_one_chain(t, cfg, c); }));
    for (int c = 0; c < cfg.chains; ++c) parts[c] = futures[c].get();
  }

  GibbsResult r;
  const std::size_t n_total = static_cast<std::size_t>(cfg.samples) * cfg.chains;
  r.att_draws.reserve(n_total);
  r.atl_draws.reserve(n_total);
  for (const auto& part : parts) {
    r.att_draws.insert(r.att_draws.end(), part.att.begin(), part.att.end());
    r.atl_draws.insert(r.atl_draws.end(), part.atl.begin(), part.atl.end());
    r.w_draws.insert(r.w_draws.end(), part.w.begin(), part.w.end());
    r.r_tw_draws.insert(r.r_tw_draws.end(), part.r_tw.begin(), part.r_tw.end());
    r.r_cw_draws.insert(r.r_cw_draws.end(), part.r_cw.begin(), part.r_cw.end());
    r.r_l_draws.insert(r.r_l_draws.end(), part.r_l.begin(), part.r_l.end());
  }
  const double n = static_cast<double>(n_total);
  auto mean_of = [n](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / n;
  };
  r.param_means = {mean_of(r.w_draws), mean_of(r.r_tw_draws), mean_of(r.r_cw_draws),
                   mean_of(r.r_l_draws)};

  r.att_p5 = percentile(r.att_draws, 0.05);
  r.att_p50 = percentile(r.att_draws, 0.50);
  r.att_p95 = percentile(r.att_draws, 0.95);
  r.atl_p5 = percentile(r.atl_draws, 0.05);
  r.atl_p50 = percentile(r.atl_draws, 0.50);
  r.atl_p95 = percentile(r.atl_draws, 0.95);

  double mean = 0;
  for (double v : r.atl_draws) mean += v;
  mean /= n;
  if (n_total < 2) {
    r.g_conf = mean > 0 ? 1.0 : (mean < 0 ? 0.0 : 0.5);
  } else {
    double ss = 0;
    for (double v : r.atl_draws) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    r.g_conf = sd > 0 ? normal_cdf(mean / sd) : (mean > 0 ? 1.0 : (mean < 0 ? 0.0 : 0.5));
  }
  return r;
}

}  // namespace adlift
