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

#include "core/hashing.hpp"
#include "core/records.hpp"

namespace adlift {

enum class Group { Test, Control };

struct Assignment {
  Group group = Group::Test;

  bool is_control() const { return group == Group::Control; }
};

// Number of hash values mapped to Control: p * 10^k, which must be integral
// so the control band is exact.
std::uint64_t control_band_width(double holdout_fraction, int digits);

// Deterministic Test/Control split: Control iff hash_digits(u) falls in the
// low band of width p * 10^k. Pure function of (u, salt, p, k).
Assignment assign(const UserId& u, double holdout_fraction, const HashConfig& cfg);

// One bid decision under pre-bid randomization. Control userIDs never reach
// the auction, so the caller must not supply an outcome for them; Test
// userIDs require one. Returns the impression tag to log.
ImpressionTag prebid_decide(const UserId& u, const CampaignConfig& campaign,
                            std::optional<bool> won);

// One serve decision under post-bid randomization (auction already won).
ImpressionTag postbid_decide(const UserId& u, const CampaignConfig& campaign);

}  // namespace adlift
