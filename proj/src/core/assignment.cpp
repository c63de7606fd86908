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

#include "core/assignment.hpp"

#include <cmath>

namespace adlift {

std::uint64_t control_band_width(double holdout_fraction, int digits) {
  if (!(holdout_fraction >= 0.0 && holdout_fraction <= 1.0))
    throw Error(ErrorCode::config, "holdout fraction must be in [0,1]");
  const double scaled = holdout_fraction * static_cast<double>(pow10_u64(digits));
  const double rounded = std::round(scaled);
  if (std::fabs(scaled - rounded) > 1e-9)
    throw Error(ErrorCode::config,
                "holdout fraction must be a multiple of 10^-" + std::to_string(digits) +
                    " so the control band is exact");
  return static_cast<std::uint64_t>(rounded);
}

Assignment assign(const UserId& u, double holdout_fraction, const HashConfig& cfg) {
  const std::uint64_t band = control_band_width(holdout_fraction, cfg.digits);
  const std::uint64_t h = hash_digits(u, cfg);
  return Assignment{h < band ? Group::Control : Group::Test};
}

ImpressionTag prebid_decide(const UserId& u, const CampaignConfig& campaign,
                            std::optional<bool> won) {
  campaign.validate();
  const HashConfig hc{campaign.hash_digits, campaign.salt};
  const Assignment a = assign(u, campaign.holdout_fraction, hc);
  if (a.is_control()) {
    if (won.has_value())
      throw Error(ErrorCode::contract,
                  "auction outcome supplied for a Control userID; Control bids are never submitted");
    return ImpressionTag::C;
  }
  if (!won.has_value())
    throw Error(ErrorCode::contract, "auction outcome required for a Test userID");
  return *won ? ImpressionTag::TW : ImpressionTag::TL;
}

ImpressionTag postbid_decide(const UserId& u, const CampaignConfig& campaign) {
  campaign.validate();
  const HashConfig hc{campaign.hash_digits, campaign.salt};
  const Assignment a = assign(u, campaign.holdout_fraction, hc);
  return a.is_control() ? ImpressionTag::C_postbid : ImpressionTag::T_postbid;
}

}  // namespace adlift
