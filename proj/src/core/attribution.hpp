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
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "core/count_table.hpp"
#include "core/identity.hpp"
#include "core/records.hpp"

namespace adlift {

enum class UnitGroup : std::uint8_t { TW, TL, C };

// Whether the logs came from pre-bid or post-bid randomization. Post-bid
// exposure tags map onto TW (exposed) and C (PSA control); there is no TL.
enum class RandomizationMode : std::uint8_t { prebid, postbid };

// One analysis unit (a userID, or a Connected-ID at CID grain) with every
// bid opportunity timestamp seen for it and its attributed conversions.
struct UnitLedger {
  UnitGroup group = UnitGroup::C;
  std::vector<std::int64_t> opp_timestamps;  // sorted ascending after classify
  std::uint64_t attributed_conversions = 0;
};

using LedgerMap = std::unordered_map<std::string, UnitLedger>;

// Records dropped or ignored along the pipeline. These are data, not errors.
struct DiscardTally {
  std::uint64_t impressions_unmapped = 0;   // no CID mapping
  std::uint64_t impressions_low_degree = 0; // CID below min-degree
  std::uint64_t events_unmapped = 0;
  std::uint64_t events_low_degree = 0;
  std::uint64_t events_unknown_unit = 0;    // no impression for the unit
  std::uint64_t events_outside_window = 0;  // no opp within the PV window

  std::uint64_t total() const {
    return impressions_unmapped + impressions_low_degree + events_unmapped +
           events_low_degree + events_unknown_unit + events_outside_window;
  }
};

enum class Grain : std::uint8_t { user_id, cid };

// How raw records map onto analysis units. At CID grain, userIDs without a
// mapping (or below the degree threshold) resolve to nothing and the record
// is discarded.
struct UnitResolver {
  Grain grain = Grain::user_id;
  const IdGraph* graph = nullptr;  // required at CID grain
  int min_degree = 1;

  // Returns nullptr when the record should be discarded; *low_degree tells
  // the caller which tally to bump.
  const std::string* resolve(const std::string& user_id, bool* low_degree) const;
};

struct ClassifyResult {
  LedgerMap ledgers;
  RandomizationMode mode = RandomizationMode::prebid;
  DiscardTally discards;
};

// Groups impressions into units. A unit with any win-tagged record is TW;
// otherwise any Test-loss record makes it TL; Control-only units are C. A
// unit carrying both Control and Test-side tags means the assignment
// function is broken and raises ErrorCode::mixed_arm. Mixing pre-bid and
// post-bid tags in one run is likewise an error.
ClassifyResult classify_units(std::span<const ImpressionRecord> impressions,
                              const UnitResolver& resolver = {});

// Attributes each event to its unit iff some opp timestamp t satisfies
// 0 <= t_event - t <= pv_window (inclusive); an event counts at most once.
void attribute_conversions(ClassifyResult& classified,
                           std::span<const EventRecord> events,
                           std::int64_t pv_window_seconds,
                           const UnitResolver& resolver = {});

CountTable build_count_table(const LedgerMap& ledgers);

// Full log -> table pipeline. n_workers > 1 shards units by hash and merges
// the per-shard tables; the result is identical to the single-shard build.
struct PipelineResult {
  CountTable table;
  RandomizationMode mode = RandomizationMode::prebid;
  DiscardTally discards;
};
PipelineResult build_table_from_logs(std::span<const ImpressionRecord> impressions,
                                     std::span<const EventRecord> events,
                                     std::int64_t pv_window_seconds,
                                     const UnitResolver& resolver = {},
                                     unsigned n_workers = 1);

}  // namespace adlift
