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

#include "core/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "core/version.hpp"

namespace adlift {

namespace {

using ordered_json = nlohmann::ordered_json;

// Fixed-precision float serialization keeps report bytes stable.
double fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

ordered_json counts_json(const CountTable& t) {
  ordered_json j;
  j["tw1"] = t.tw1;
  j["tw0"] = t.tw0;
  j["tl1"] = t.tl1;
  j["tl0"] = t.tl0;
  j["c1"] = t.c1;
  j["c0"] = t.c0;
  j["conv_t"] = t.conv_t;
  j["conv_tw"] = t.conv_tw;
  j["conv_c"] = t.conv_c;
  j["uniq_t"] = t.uniq_t;
  j["uniq_tw"] = t.uniq_tw;
  j["uniq_c"] = t.uniq_c;
  return j;
}

ordered_json estimate_json(const LiftEstimate& e, double standard_est) {
  ordered_json j;
  j["count_mode"] = count_mode_name(e.mode);
  ordered_json rates;
  rates["r_t"] = fixed(e.r_t);
  rates["r_c"] = fixed(e.r_c);
  rates["r_tw"] = fixed(e.r_tw);
  if (e.r_tl.has_value())
    rates["r_tl"] = fixed(*e.r_tl);
  else
    rates["r_tl"] = nullptr;
  rates["r_cw_inferred"] = fixed(e.r_cw_inferred);
  j["rates"] = rates;
  j["w"] = fixed(e.w);
  j["ace"] = fixed(e.ace);
  j["att"] = fixed(e.att);
  j["atl"] = fixed(e.atl);
  j["inc"] = fixed(e.inc);
  j["standard_estimator"] = fixed(standard_est);

  const DisplayEstimate d = display_estimate(e);
  ordered_json bp;
  bp["r_t_bp"] = d.r_t_bp;
  bp["r_c_bp"] = d.r_c_bp;
  bp["r_tw_bp"] = d.r_tw_bp;
  bp["att_bp"] = d.att_bp;
  bp["atl_pct"] = d.atl_pct;
  bp["inc_pct"] = d.inc_pct;
  bp["w_pct"] = d.w_pct;
  j["display"] = bp;

  const RoundedChain c = rounded_chain(e);
  ordered_json chain;
  chain["r_t_bp"] = c.r_t_bp;
  chain["r_c_bp"] = c.r_c_bp;
  chain["r_tw_bp"] = c.r_tw_bp;
  chain["w_pct"] = c.w_pct;
  chain["ace_bp"] = c.ace_bp;
  chain["att_bp"] = c.att_bp;
  chain["r_cw_bp"] = c.r_cw_bp;
  if (c.atl_pct.has_value())
    chain["atl_pct"] = *c.atl_pct;
  else
    chain["atl_pct"] = nullptr;
  if (c.inc_pct.has_value())
    chain["inc_pct"] = *c.inc_pct;
  else
    chain["inc_pct"] = nullptr;
  j["rounded_chain"] = chain;
  return j;
}

ordered_json gibbs_json(const GibbsResult& g, const GibbsConfig& cfg) {
  ordered_json j;
  j["burn_in"] = cfg.burn_in;
  j["samples"] = cfg.samples;
  j["chains"] = cfg.chains;
  j["seed"] = cfg.seed;
  j["cw0_draw"] = cfg.cw0_draw == Cw0Draw::exact ? "exact" : "response_weighted";
  ordered_json att;
  att["p5"] = fixed(g.att_p5);
  att["p50"] = fixed(g.att_p50);
  att["p95"] = fixed(g.att_p95);
  j["att"] = att;
  ordered_json atl;
  atl["p5"] = fixed(g.atl_p5);
  atl["p50"] = fixed(g.atl_p50);
  atl["p95"] = fixed(g.atl_p95);
  j["atl"] = atl;
  j["g_conf"] = fixed(g.g_conf);
  ordered_json pm;
  pm["w"] = fixed(g.param_means.w);
  pm["r_tw"] = fixed(g.param_means.r_tw);
  pm["r_cw"] = fixed(g.param_means.r_cw);
  pm["r_l"] = fixed(g.param_means.r_l);
  j["param_means"] = pm;
  j["n_draws"] = g.atl_draws.size();
  return j;
}

ordered_json discards_json(const DiscardTally& d) {
  ordered_json j;
  j["impressions_unmapped"] = d.impressions_unmapped;
  j["impressions_low_degree"] = d.impressions_low_degree;
  j["events_unmapped"] = d.events_unmapped;
  j["events_low_degree"] = d.events_low_degree;
  j["events_unknown_unit"] = d.events_unknown_unit;
  j["events_outside_window"] = d.events_outside_window;
  j["total"] = d.total();
  return j;
}

ordered_json config_json(const AnalysisOptions& o) {
  ordered_json j;
  j["campaign_id"] = o.campaign.campaign_id;
  j["holdout_fraction"] = fixed(o.campaign.holdout_fraction);
  j["pv_window_seconds"] = o.campaign.pv_window_seconds;
  j["hash_digits"] = o.campaign.hash_digits;
  j["salt"] = o.campaign.salt;
  j["grain"] = o.grain == Grain::user_id ? "userid" : "cid";
  j["count_mode"] = count_mode_name(o.count_mode);
  j["min_degree"] = o.min_degree;
  ordered_json g;
  g["enabled"] = o.run_gibbs;
  g["burn_in"] = o.gibbs.burn_in;
  g["samples"] = o.gibbs.samples;
  g["chains"] = o.gibbs.chains;
  g["seed"] = o.gibbs.seed;
  g["cw0_draw"] = o.gibbs.cw0_draw == Cw0Draw::exact ? "exact" : "response_weighted";
  j["gibbs"] = g;
  j["workers"] = o.workers;
  return j;
}

}  // namespace

AnalysisReport analyze_counts(const AnalysisOptions& options, const CountTable& table,
                              RandomizationMode mode, const DiscardTally& discards) {
  require_valid(table);
  AnalysisReport r;
  r.campaign_id = options.campaign.campaign_id;
  r.grain = options.grain;
  r.count_mode = options.count_mode;
  r.randomization = mode;
  r.counts = table;
  r.discards = discards;
  r.options = options;
  if (mode == RandomizationMode::postbid) {
    r.estimate = postbid_estimates(table, options.count_mode);
  } else {
    r.estimate = point_estimates(table, options.count_mode);
  }
  r.standard_est = standard_estimator(table, options.count_mode);
  if (options.run_gibbs) r.gibbs = run_chain(table, options.gibbs);
  return r;
}

AnalysisReport analyze_logs(const AnalysisOptions& options,
                            std::span<const ImpressionRecord> impressions,
                            std::span<const EventRecord> events,
                            const IdGraph* graph) {
  UnitResolver resolver;
  resolver.grain = options.grain;
  resolver.graph = graph;
  resolver.min_degree = options.min_degree;
  if (options.grain == Grain::cid && graph == nullptr)
    throw Error(ErrorCode::config, "CID grain requires a cid graph");
  PipelineResult p = build_table_from_logs(impressions, events,
                                           options.campaign.pv_window_seconds, resolver,
                                           options.workers);
  return analyze_counts(options, p.table, p.mode, p.discards);
}

std::string report_to_json(const AnalysisReport& r) {
  ordered_json j;
  j["campaign_id"] = r.campaign_id;
  j["grain"] = r.grain == Grain::user_id ? "userid" : "cid";
  j["randomization"] = r.randomization == RandomizationMode::prebid ? "prebid" : "postbid";
  j["counts"] = counts_json(r.counts);
  j["estimate"] = estimate_json(r.estimate, r.standard_est);
  if (r.gibbs.has_value())
    j["gibbs"] = gibbs_json(*r.gibbs, r.options.gibbs);
  else
    j["gibbs"] = nullptr;
  j["discards"] = discards_json(r.discards);
  j["config"] = config_json(r.options);
  j["seed"] = r.options.gibbs.seed;
  j["version"] = ADLIFT_VERSION;
  return j.dump(2);
}

std::string report_table_header() {
  return "id,ATL,INC,ATT,gConf,g5,g50,g95,R_T,R_C,R_TW,w,TU,TC,TWU,TWC,CU,CC";
}

std::string report_table_row(const AnalysisReport& r) {
  const DisplayEstimate d = display_estimate(r.estimate);
  std::ostringstream out;
  out << r.campaign_id << ',' << d.atl_pct << ',' << d.inc_pct << ',' << d.att_bp << ',';
  if (r.gibbs.has_value()) {
    out << round_half_away(r.gibbs->g_conf * 100.0) << ','
        << round_half_away(r.gibbs->atl_p5 * 100.0) << ','
        << round_half_away(r.gibbs->atl_p50 * 100.0) << ','
        << round_half_away(r.gibbs->atl_p95 * 100.0) << ',';
  } else {
    out << ",,,,";
  }
  const CountTable& t = r.counts;
  const bool conv = r.count_mode == CountMode::conversions;
  out << d.r_t_bp << ',' << d.r_c_bp << ',' << d.r_tw_bp << ',' << d.w_pct << ','
      << t.uniq_t << ',' << (conv ? t.conv_t : t.tw1 + t.tl1) << ',' << t.uniq_tw << ','
      << (conv ? t.conv_tw : t.tw1) << ',' << t.uniq_c << ',' << (conv ? t.conv_c : t.c1);
  return out.str();
}

std::string gibbs_result_to_json(const GibbsResult& g, const GibbsConfig& cfg) {
  return gibbs_json(g, cfg).dump(2);
}

std::string gibbs_draws_csv(const GibbsResult& g) {
  std::ostringstream out;
  out << "iter,w,r_tw,r_cw,r_l,att,atl\n";
  char buf[160];
  for (std::size_t i = 0; i < g.atl_draws.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", i,
                  g.w_draws[i], g.r_tw_draws[i], g.r_cw_draws[i], g.r_l_draws[i],
                  g.att_draws[i], g.atl_draws[i]);
    out << buf;
  }
  return out.str();
}

}  // namespace adlift
