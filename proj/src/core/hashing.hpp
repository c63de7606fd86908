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
#include <string_view>

#include "core/errors.hpp"
#include "core/records.hpp"

namespace adlift {

struct HashConfig {
  int digits = 4;     // k >= 1: output range is [0, 10^k)
  std::string salt;   // campaign-scoped

  void validate() const {
    if (digits < 1 || digits > 18)
      throw Error(ErrorCode::config, "hash digits must be in [1,18]");
  }
};

// 64-bit deterministic hash of (salt || key). FNV-1a with a splitmix64
// finalizer for avalanche; stable across runs and platforms.
std::uint64_t hash64(std::string_view salt, std::string_view key);

// Power of ten, valid for e in [0,18].
std::uint64_t pow10_u64(int e);

// Maps a userID to a k-digit decimal number, uniform over [0, 10^k) for
// random inputs.
std::uint64_t hash_digits(const UserId& u, const HashConfig& cfg);

}  // namespace adlift
