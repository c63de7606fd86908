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

#include "core/hashing.hpp"

namespace adlift {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a_accumulate(std::uint64_t h, std::string_view data) {
  for (unsigned char byte : data) {
    h ^= byte;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t hash64(std::string_view salt, std::string_view key) {
  std::uint64_t h = fnv1a_accumulate(kFnvOffset, salt);
  // Separator byte keeps ("ab","c") and ("a","bc") distinct.
  h ^= 0x1f;
  h *= kFnvPrime;
  h = fnv1a_accumulate(h, key);
  return splitmix64_finalize(h);
}

std::uint64_t pow10_u64(int e) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) v *= 10;
  return v;
}

std::uint64_t hash_digits(const UserId& u, const HashConfig& cfg) {
  cfg.validate();
  if (u.value.empty()) throw Error(ErrorCode::validation, "userID must be non-empty");
  return hash64(cfg.salt, u.value) % pow10_u64(cfg.digits);
}

}  // namespace adlift
