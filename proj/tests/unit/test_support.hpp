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
#include <random>

#include "core/count_table.hpp"

namespace adlift_test {

// Builds a table from the raw count columns of a reference results table (TU, TC, TWU, TWC,
// CU, CC) treating responders as equal to conversions.
inline adlift::CountTable table_from_row(std::uint64_t tu, std::uint64_t tc,
                                         std::uint64_t twu, std::uint64_t twc,
                                         std::uint64_t cu, std::uint64_t cc) {
  adlift::CountTable t;
  t.uniq_t = tu;
  t.uniq_tw = twu;
  t.uniq_c = cu;
  t.conv_t = tc;
  t.conv_tw = twc;
  t.conv_c = cc;
  t.tw1 = twc;
  t.tw0 = twu - twc;
  t.tl1 = tc - twc;
  t.tl0 = (tu - twu) - (tc - twc);
  t.c1 = cc;
  t.c0 = cu - cc;
  return t;
}

// Semantically consistent random table: responders are a subset of units and
// conversions dominate responders.
inline adlift::CountTable random_table(std::mt19937_64& rng,
                                       std::uint64_t max_units = 100000) {
  std::uniform_int_distribution<std::uint64_t> units(1, max_units);
  adlift::CountTable t;
  t.uniq_tw = units(rng);
  const std::uint64_t uniq_tl = units(rng);
  t.uniq_c = units(rng);
  t.uniq_t = t.uniq_tw + uniq_tl;
  auto split = [&](std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> d(0, n);
    return d(rng);
  };
  t.tw1 = split(t.uniq_tw);
  t.tw0 = t.uniq_tw - t.tw1;
  t.tl1 = split(uniq_tl);
  t.tl0 = uniq_tl - t.tl1;
  t.c1 = split(t.uniq_c);
  t.c0 = t.uniq_c - t.c1;
  auto inflate = [&](std::uint64_t responders) {
    std::uniform_int_distribution<std::uint64_t> extra(0, responders);
    return responders + extra(rng);
  };
  t.conv_tw = inflate(t.tw1);
  t.conv_c = inflate(t.c1);
  t.conv_t = t.conv_tw + inflate(t.tl1);
  return t;
}

}  // namespace adlift_test
