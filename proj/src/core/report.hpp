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

#include <optional>
#include <string>

#include "core/attribution.hpp"
#include "core/config.hpp"
#include "core/count_table.hpp"
#include "core/estimators.hpp"
#include "core/gibbs.hpp"

namespace adlift {

// Everything one analysis run produced. Every number is recomputable from
// the inputs plus the seed.
struct AnalysisReport {
  std::string campaign_id;
  Grain grain = Grain::user_id;
  CountMode count_mode = CountMode::conversions;
  RandomizationMode randomization = RandomizationMode::prebid;
  CountTable counts;
  LiftEstimate estimate;
  double standard_est = 0.0;
  std::optional<GibbsResult> gibbs;
  DiscardTally discards;
  AnalysisOptions options;
};

// Runs estimation (+ optionally the sampler) over a prepared count table.
AnalysisReport analyze_counts(const AnalysisOptions& options, const CountTable& table,
                              RandomizationMode mode = RandomizationMode::prebid,
                              const DiscardTally& discards = {});

// Full pipeline over in-memory logs.
AnalysisReport analyze_logs(const AnalysisOptions& options,
                            std::span<const ImpressionRecord> impressions,
                            std::span<const EventRecord> events,
                            const IdGraph* graph = nullptr);

// Fixed-key-order JSON document; byte-identical for identical inputs+seed.
std::string report_to_json(const AnalysisReport& r);

// Text table in the reference layout: id, ATL, INC, ATT, gConf, g5, g50,
// g95, R_T, R_C, R_TW, w, TU, TC, TWU, TWC, CU, CC. Ratios in percent,
// rates and ATT in basis points, all integers rounded half away from zero.
std::string report_table_header();
std::string report_table_row(const AnalysisReport& r);

// Gibbs result JSON / draws CSV (columns: iter, w, r_tw, r_cw, r_l, att, atl).
std::string gibbs_result_to_json(const GibbsResult& g, const GibbsConfig& cfg);
std::string gibbs_draws_csv(const GibbsResult& g);

}  // namespace adlift
