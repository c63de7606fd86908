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
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace adlift {

// The observed counts an analysis reduces to.
//
// tw1/tw0 etc. are responders / non-responders per population (binary, one
// per unit). conv_* are total attributed conversions, which can exceed one
// per unit when identifiers recur. uniq_* are unique unit counts.
struct CountTable {
  std::uint64_t tw1 = 0, tw0 = 0;
  std::uint64_t tl1 = 0, tl0 = 0;
  std::uint64_t c1 = 0, c0 = 0;
  std::uint64_t conv_t = 0, conv_tw = 0, conv_c = 0;
  std::uint64_t uniq_t = 0, uniq_tw = 0, uniq_c = 0;

  std::uint64_t uniq_tl() const { return uniq_t - uniq_tw; }
  std::uint64_t conv_tl() const { return conv_t - conv_tw; }

  bool operator==(const CountTable&) const = default;
};

// Returns every violated invariant (field names included); empty means ok.
std::vector<std::string> validate_count_table(const CountTable& t);

// Throws ErrorCode::validation listing all violations.
void require_valid(const CountTable& t);

// Component-wise sum; valid when the operands were built from disjoint unit
// sets. Associative and commutative.
CountTable merge(const CountTable& a, const CountTable& b);

// JSON document with field names exactly as in the struct.
std::string count_table_to_json(const CountTable& t);
CountTable count_table_from_json(const std::string& text);

// Split of the Control group into latent winner/loser types.
struct HiddenCounts {
  std::uint64_t cw1 = 0, cw0 = 0;
  std::uint64_t cl1 = 0, cl0 = 0;
};

}  // namespace adlift
