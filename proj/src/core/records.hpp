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

#include "core/errors.hpp"

namespace adlift {

// Opaque device/browser identifier (cookie or mobile advertising ID).
// Byte-exact equality is identity.
struct UserId {
  std::string value;

  bool operator==(const UserId&) const = default;
};

// Master identifier deterministically linking a consumer's userIDs.
struct ConnectedId {
  std::string value;

  bool operator==(const ConnectedId&) const = default;
};

// Which population an impression record places its userID in.
//
// C/TW/TL come from pre-bid randomized delivery: C means the bid was
// withheld (phantom control), TW a won Test bid, TL a lost Test bid.
// The *_postbid tags come from post-bid randomization, where Control is
// served a PSA after the auction was already won.
enum class ImpressionTag : std::uint8_t {
  C,
  TW,
  TL,
  T_postbid,
  C_postbid,
};

inline const char* impression_tag_name(ImpressionTag t) {
  switch (t) {
    case ImpressionTag::C: return "C";
    case ImpressionTag::TW: return "TW";
    case ImpressionTag::TL: return "TL";
    case ImpressionTag::T_postbid: return "T_postbid";
    case ImpressionTag::C_postbid: return "C_postbid";
  }
  return "?";
}

inline ImpressionTag impression_tag_from_name(const std::string& s) {
  if (s == "C") return ImpressionTag::C;
  if (s == "TW") return ImpressionTag::TW;
  if (s == "TL") return ImpressionTag::TL;
  if (s == "T_postbid") return ImpressionTag::T_postbid;
  if (s == "C_postbid") return ImpressionTag::C_postbid;
  throw Error(ErrorCode::unknown_tag, "unknown impression tag: '" + s + "'");
}

inline bool is_prebid_tag(ImpressionTag t) {
  return t == ImpressionTag::C || t == ImpressionTag::TW || t == ImpressionTag::TL;
}

struct BidOppRecord {
  UserId user_id;
  std::int64_t timestamp = 0;  // epoch seconds
  std::string request_id;
  std::string exchange_id;

  bool operator==(const BidOppRecord&) const = default;
};

struct ImpressionRecord {
  UserId user_id;
  std::int64_t timestamp = 0;
  std::string campaign_id;
  ImpressionTag tag = ImpressionTag::C;

  bool operator==(const ImpressionRecord&) const = default;
};

struct EventRecord {
  UserId user_id;
  std::int64_t timestamp = 0;
  std::string campaign_id;

  bool operator==(const EventRecord&) const = default;
};

// Per-campaign measurement settings.
struct CampaignConfig {
  std::string campaign_id;
  double holdout_fraction = 0.1;     // p, in (0,1)
  std::int64_t pv_window_seconds = 86400;  // V_c, > 0
  int hash_digits = 4;               // k
  std::string salt;                  // campaign-scoped; related campaigns share one

  void validate() const {
    if (campaign_id.empty())
      throw Error(ErrorCode::config, "campaign_id must be non-empty");
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
      throw Error(ErrorCode::config, "holdout_fraction must be in (0,1)");
    if (pv_window_seconds <= 0)
      throw Error(ErrorCode::config, "pv_window_seconds must be positive");
    if (hash_digits < 1 || hash_digits > 18)
      throw Error(ErrorCode::config, "hash_digits must be in [1,18]");
  }
};

}  // namespace adlift
