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

#include "core/estimators.hpp"

#include <cmath>

namespace adlift {

namespace {

struct RawRates {
  double resp_t = 0, resp_c = 0, resp_tw = 0;
  std::optional<double> resp_tl;
};

RawRates rates_for_mode(const CountTable& t, CountMode mode) {
  RawRates r;
  const double nt = static_cast<double>(t.uniq_t);
  const double nc = static_cast<double>(t.uniq_c);
  const double ntw = static_cast<double>(t.uniq_tw);
  const double ntl = static_cast<double>(t.uniq_tl());
  if (mode == CountMode::conversions) {
    r.resp_t = static_cast<double>(t.conv_t) / nt;
    r.resp_c = static_cast<double>(t.conv_c) / nc;
    r.resp_tw = static_cast<double>(t.conv_tw) / ntw;
    if (ntl > 0) r.resp_tl = static_cast<double>(t.conv_tl()) / ntl;
  } else {
    r.resp_t = static_cast<double>(t.tw1 + t.tl1) / nt;
    r.resp_c = static_cast<double>(t.c1) / nc;
    r.resp_tw = static_cast<double>(t.tw1) / ntw;
    if (ntl > 0) r.resp_tl = static_cast<double>(t.tl1) / ntl;
  }
  return r;
}

void require_populations(const CountTable& t) {
  if (t.uniq_tw == 0)
    throw Error(ErrorCode::empty_population,
                "win rate is degenerate: no Test-Winner units (w = 0, ATT undefined)");
  if (t.uniq_t == 0)
    throw Error(ErrorCode::empty_population, "no Test units");
  if (t.uniq_c == 0)
    throw Error(ErrorCode::empty_population, "no Control units");
}

}  // namespace

LiftEstimate point_estimates(const CountTable& t, CountMode mode) {
  require_valid(t);
  require_populations(t);
  const RawRates r = rates_for_mode(t, mode);
  LiftEstimate e;
  e.mode = mode;
  e.r_t = r.resp_t;
  e.r_c = r.resp_c;
  e.r_tw = r.resp_tw;
  e.r_tl = r.resp_tl;
  e.w = static_cast<double>(t.uniq_tw) / static_cast<double>(t.uniq_t);
  e.ace = e.r_t - e.r_c;
  e.att = e.ace / e.w;
  e.r_cw_inferred = e.r_tw - e.att;
  if (e.att == 0.0) {
    // Exact null effect: the relative measures are zero even when the rates
    // themselves are zero (e.g. an empty event log).
    e.atl = 0.0;
    e.inc = 0.0;
    return e;
  }
  if (!(e.r_cw_inferred > 0.0))
    throw Error(ErrorCode::non_positive_baseline,
                "inferred counterfactual baseline r_cw = r_tw - att is not positive; "
                "ATL is undefined (sampling noise at tiny counts or model violation)");
  e.atl = e.att / e.r_cw_inferred;
  if (e.r_tw == 0.0)
    throw Error(ErrorCode::zero_exposed_rate,
                "exposed response rate is zero; incrementality is undefined");
  e.inc = e.att / e.r_tw;
  return e;
}

double standard_estimator(const CountTable& t, CountMode mode) {
  require_valid(t);
  if (t.uniq_tw == 0)
    throw Error(ErrorCode::empty_population, "no exposed units");
  const std::uint64_t unexposed_units = t.uniq_c + t.uniq_tl();
  if (unexposed_units == 0)
    throw Error(ErrorCode::empty_population, "no unexposed units");
  double exposed_rate, unexposed_rate;
  if (mode == CountMode::conversions) {
    exposed_rate = static_cast<double>(t.conv_tw) / static_cast<double>(t.uniq_tw);
    unexposed_rate = static_cast<double>(t.conv_c + t.conv_tl()) /
                     static_cast<double>(unexposed_units);
  } else {
    exposed_rate = static_cast<double>(t.tw1) / static_cast<double>(t.uniq_tw);
    unexposed_rate = static_cast<double>(t.c1 + t.tl1) / static_cast<double>(unexposed_units);
  }
  return exposed_rate - unexposed_rate;
}

LiftEstimate postbid_estimates(const CountTable& t, CountMode mode) {
  require_valid(t);
  if (t.uniq_tw == 0) throw Error(ErrorCode::empty_population, "no exposed units");
  if (t.uniq_c == 0) throw Error(ErrorCode::empty_population, "no control units");
  if (t.uniq_tl() != 0)
    throw Error(ErrorCode::validation, "post-bid data cannot contain Test-loss units");
  const RawRates r = rates_for_mode(t, mode);
  LiftEstimate e;
  e.mode = mode;
  e.r_t = r.resp_t;
  e.r_c = r.resp_c;
  e.r_tw = r.resp_tw;
  e.w = 1.0;
  e.ace = e.r_tw - e.r_c;
  e.att = e.ace;
  e.r_cw_inferred = e.r_c;
  if (e.att == 0.0) {
    e.atl = 0.0;
    e.inc = 0.0;
    return e;
  }
  if (!(e.r_cw_inferred > 0.0))
    throw Error(ErrorCode::non_positive_baseline,
                "control response rate is zero; ATL is undefined");
  e.atl = e.att / e.r_cw_inferred;
  if (e.r_tw == 0.0)
    throw Error(ErrorCode::zero_exposed_rate,
                "exposed response rate is zero; incrementality is undefined");
  e.inc = e.att / e.r_tw;
  return e;
}

long long round_half_away(double x) {
  return std::llround(x);
}

DisplayEstimate display_estimate(const LiftEstimate& e) {
  DisplayEstimate d;
  d.r_t_bp = round_half_away(e.r_t * 1e4);
  d.r_c_bp = round_half_away(e.r_c * 1e4);
  d.r_tw_bp = round_half_away(e.r_tw * 1e4);
  d.att_bp = round_half_away(e.att * 1e4);
  d.atl_pct = round_half_away(e.atl * 100.0);
  d.inc_pct = round_half_away(e.inc * 100.0);
  d.w_pct = round_half_away(e.w * 100.0);
  return d;
}

RoundedChain rounded_chain(const LiftEstimate& e) {
  RoundedChain c;
  c.r_t_bp = round_half_away(e.r_t * 1e4);
  c.r_c_bp = round_half_away(e.r_c * 1e4);
  c.r_tw_bp = round_half_away(e.r_tw * 1e4);
  c.w_pct = round_half_away(e.w * 100.0);
  c.ace_bp = c.r_t_bp - c.r_c_bp;
  if (c.w_pct > 0) {
    c.att_bp = round_half_away(static_cast<double>(c.ace_bp) * 100.0 /
                               static_cast<double>(c.w_pct));
    c.r_cw_bp = c.r_tw_bp - c.att_bp;
    if (c.r_cw_bp > 0)
      c.atl_pct = round_half_away(static_cast<double>(c.att_bp) * 100.0 /
                                  static_cast<double>(c.r_cw_bp));
    if (c.r_tw_bp > 0)
      c.inc_pct = round_half_away(static_cast<double>(c.att_bp) * 100.0 /
                                  static_cast<double>(c.r_tw_bp));
  }
  return c;
}

}  // namespace adlift
