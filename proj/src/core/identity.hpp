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

#include "core/errors.hpp"
#include "core/records.hpp"

namespace adlift {

// Deterministic many-to-one mapping from userIDs to master consumer IDs.
// Loaded once, then read-only.
class IdGraph {
 public:
  // Adds one edge. A userID may map to at most one CID; a conflicting
  // duplicate is a hard load error.
  void add_edge(const std::string& user_id, const std::string& cid);

  // Two-column CSV with header `user_id,cid`.
  static IdGraph load_csv(const std::string& path);
  static IdGraph parse_csv(const std::string& text);

  // CID of a userID, or nullptr when unmapped.
  const std::string* lookup(const std::string& user_id) const;

  // Distinct userIDs linked to the CID anywhere in the graph (not just in
  // the analyzed logs).
  int degree(const std::string& cid) const;

  std::size_t user_count() const { return user_to_cid_.size(); }
  std::size_t cid_count() const { return cid_degree_.size(); }

 private:
  std::unordered_map<std::string, std::string> user_to_cid_;
  std::unordered_map<std::string, int> cid_degree_;
};

struct RemapResult {
  std::vector<ImpressionRecord> impressions;
  std::vector<EventRecord> events;
  std::uint64_t discarded_unmapped = 0;
  std::uint64_t discarded_low_degree = 0;
};

// Rewrites record userIDs to their CIDs, discarding records whose userID has
// no mapping or whose CID links fewer than min_degree userIDs.
RemapResult remap_to_cid(std::span<const ImpressionRecord> impressions,
                         std::span<const EventRecord> events,
                         const IdGraph& graph, int min_degree);

// Device-level lift measured when each consumer owns k identifiers, each
// independently held out with probability p, all Test devices are exposed,
// and the true consumer-level lift is a:
//   a * p^(k-1) / (1 + a - a * p^(k-1))
double diluted_atl(double true_lift, double holdout, int devices_per_consumer);

// Over-representation of two-device consumers in Control relative to Test:
// (2 - p) / (1 + p).
double multidevice_skew_factor(double holdout);

}  // namespace adlift
