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

#include "core/attribution.hpp"

#include <algorithm>
#include <future>
#include <optional>

#include "core/hashing.hpp"

namespace adlift {

const std::string* UnitResolver::resolve(const std::string& user_id, bool* low_degree) const {
  *low_degree = false;
  if (grain == Grain::user_id) return &user_id;
  if (graph == nullptr)
    throw Error(ErrorCode::config, "CID grain requires an id graph");
  const std::string* cid = graph->lookup(user_id);
  if (!cid) return nullptr;
  if (graph->degree(*cid) < min_degree) {
    *low_degree = true;
    return nullptr;
  }
  return cid;
}

namespace {

struct TagSides {
  bool control;   // C or C_postbid
  bool win;       // TW or T_postbid
  bool postbid;
};

TagSides tag_sides(ImpressionTag tag) {
  switch (tag) {
    case ImpressionTag::C: return {true, false, false};
    case ImpressionTag::TW: return {false, true, false};
    case ImpressionTag::TL: return {false, false, false};
    case ImpressionTag::C_postbid: return {true, false, true};
    case ImpressionTag::T_postbid: return {false, true, true};
  }
  throw Error(ErrorCode::unknown_tag, "unhandled impression tag");
}

}  // namespace

ClassifyResult classify_units(std::span<const ImpressionRecord> impressions,
                              const UnitResolver& resolver) {
  ClassifyResult out;
  std::optional<bool> postbid_mode;
  for (const auto& imp : impressions) {
    const TagSides sides = tag_sides(imp.tag);
    if (!postbid_mode.has_value()) {
      postbid_mode = sides.postbid;
    } else if (*postbid_mode != sides.postbid) {
      throw Error(ErrorCode::validation,
                  "impression log mixes pre-bid and post-bid tags; run one randomization mode "
                  "per analysis");
    }
    bool low_degree = false;
    const std::string* unit = resolver.resolve(imp.user_id.value, &low_degree);
    if (!unit) {
      ++(low_degree ? out.discards.impressions_low_degree : out.discards.impressions_unmapped);
      continue;
    }
    auto [it, inserted] = out.ledgers.try_emplace(*unit);
    UnitLedger& ledger = it->second;
    if (inserted) {
      ledger.group = sides.control ? UnitGroup::C
                   : sides.win     ? UnitGroup::TW
                                   : UnitGroup::TL;
    } else {
      const bool was_control = ledger.group == UnitGroup::C;
      if (was_control != sides.control)
        throw Error(ErrorCode::mixed_arm,
                    "unit '" + *unit + "' carries both Control and Test impressions; "
                    "the assignment function is corrupt");
      // One win anywhere makes the unit a winner.
      if (sides.win) ledger.group = UnitGroup::TW;
    }
    ledger.opp_timestamps.push_back(imp.timestamp);
  }
  for (auto& [unit, ledger] : out.ledgers)
    std::sort(ledger.opp_timestamps.begin(), ledger.opp_timestamps.end());
  out.mode = postbid_mode.value_or(false) ? RandomizationMode::postbid
                                          : RandomizationMode::prebid;
  return out;
}

void attribute_conversions(ClassifyResult& classified,
                           std::span<const EventRecord> events,
                           std::int64_t pv_window_seconds,
                           const UnitResolver& resolver) {
  if (pv_window_seconds <= 0)
    throw Error(ErrorCode::config, "pv window must be positive");
  for (const auto& ev : events) {
    bool low_degree = false;
    const std::string* unit = resolver.resolve(ev.user_id.value, &low_degree);
    if (!unit) {
      ++(low_degree ? classified.discards.events_low_degree
                    : classified.discards.events_unmapped);
      continue;
    }
    auto it = classified.ledgers.find(*unit);
    if (it == classified.ledgers.end()) {
      ++classified.discards.events_unknown_unit;
      continue;
    }
    // Attributable iff some opp lies in [t_event - V_c, t_event]. The opps
    // are sorted, so the latest opp at or before the event decides.
    const auto& opps = it->second.opp_timestamps;
    auto after = std::upper_bound(opps.begin(), opps.end(), ev.timestamp);
    if (after == opps.begin() || ev.timestamp - *(after - 1) > pv_window_seconds) {
      ++classified.discards.events_outside_window;
      continue;
    }
    ++it->second.attributed_conversions;
  }
}

CountTable build_count_table(const LedgerMap& ledgers) {
  CountTable t;
  for (const auto& [unit, ledger] : ledgers) {
    const bool responded = ledger.attributed_conversions > 0;
    switch (ledger.group) {
      case UnitGroup::TW:
        ++t.uniq_tw;
        ++t.uniq_t;
        t.conv_tw += ledger.attributed_conversions;
        t.conv_t += ledger.attributed_conversions;
        ++(responded ? t.tw1 : t.tw0);
        break;
      case UnitGroup::TL:
        ++t.uniq_t;
        t.conv_t += ledger.attributed_conversions;
        ++(responded ? t.tl1 : t.tl0);
        break;
      case UnitGroup::C:
        ++t.uniq_c;
        t.conv_c += ledger.attributed_conversions;
        ++(responded ? t.c1 : t.c0);
        break;
    }
  }
  return t;
}

PipelineResult build_table_from_logs(std::span<const ImpressionRecord> impressions,
                                     std::span<const EventRecord> events,
                                     std::int64_t pv_window_seconds,
                                     const UnitResolver& resolver,
                                     unsigned n_workers) {
  if (n_workers <= 1) {
    ClassifyResult classified = classify_units(impressions, resolver);
    attribute_conversions(classified, events, pv_window_seconds, resolver);
    PipelineResult out;
    out.table = build_count_table(classified.ledgers);
    out.mode = classified.mode;
    out.discards = classified.discards;
    return out;
  }

  // Shard by unit hash so each unit's records land in exactly one worker,
  // then merge the per-shard tables.
  const unsigned shards = n_workers;
  std::vector<std::vector<ImpressionRecord>> imp_shards(shards);
  std::vector<std::vector<EventRecord>> ev_shards(shards);
  DiscardTally resolve_discards;
  auto shard_of = [&](const std::string& user_id,
                      bool* resolved, bool* low_degree) -> unsigned {
    const std::string* unit = resolver.resolve(user_id, low_degree);
    *resolved = unit != nullptr;
    if (!unit) return 0;
    return static_cast<unsigned>(hash64("shard", *unit) % shards);
  };
  for (const auto& r : impressions) {
    bool resolved = false, low_degree = false;
    unsigned s = shard_of(r.user_id.value, &resolved, &low_degree);
    if (!resolved) {
      ++(low_degree ? resolve_discards.impressions_low_degree
                    : resolve_discards.impressions_unmapped);
      continue;
    }
    imp_shards[s].push_back(r);
  }
  for (const auto& r : events) {
    bool resolved = false, low_degree = false;
    unsigned s = shard_of(r.user_id.value, &resolved, &low_degree);
    if (!resolved) {
      ++(low_degree ? resolve_discards.events_low_degree : resolve_discards.events_unmapped);
      continue;
    }
    ev_shards[s].push_back(r);
  }

  std::vector<std::future<PipelineResult>> futures;
  futures.reserve(shards);
  for (unsigned s = 0; s < shards; ++s) {
    futures.push_back(std::async(std::launch::async, [&, s] {
      return build_table_from_logs(imp_shards[s], ev_shards[s], pv_window_seconds,
                                   resolver, 1);
    }));
  }
  PipelineResult out;
  out.discards = resolve_discards;
  std::optional<RandomizationMode> mode;
  for (auto& f : futures) {
    PipelineResult part = f.get();
    out.table = merge(out.table, part.table);
    out.discards.events_unknown_unit += part.discards.events_unknown_unit;
    out.discards.events_outside_window += part.discards.events_outside_window;
    if (part.table.uniq_t + part.table.uniq_c == 0) continue;
    if (!mode.has_value()) {
      mode = part.mode;
    } else if (*mode != part.mode) {
      throw Error(ErrorCode::validation,
                  "impression log mixes pre-bid and post-bid tags; run one randomization mode "
                  "per analysis");
    }
  }
  out.mode = mode.value_or(RandomizationMode::prebid);
  return out;
}

}  // namespace adlift
