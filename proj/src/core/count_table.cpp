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

#include "core/count_table.hpp"

#include <json.hpp>

namespace adlift {

std::vector<std::string> validate_count_table(const CountTable& t) {
  std::vector<std::string> v;
  if (t.tw1 > t.uniq_tw) v.push_back("tw1 <= uniq_tw");
  if (t.tw1 + t.tw0 != t.uniq_tw) v.push_back("tw1 + tw0 = uniq_tw");
  if (t.uniq_tw > t.uniq_t) v.push_back("uniq_tw <= uniq_t");
  if (t.uniq_tw <= t.uniq_t && t.tl1 + t.tl0 != t.uniq_t - t.uniq_tw)
    v.push_back("tl1 + tl0 = uniq_t - uniq_tw");
  if (t.c1 + t.c0 != t.uniq_c) v.push_back("c1 + c0 = uniq_c");
  if (t.conv_tw > t.conv_t) v.push_back("conv_tw <= conv_t");
  if (t.tw1 > t.conv_tw) v.push_back("tw1 <= conv_tw");
  if (t.tl1 > t.conv_t - t.conv_tw && t.conv_tw <= t.conv_t)
    v.push_back("tl1 <= conv_t - conv_tw");
  if (t.c1 > t.conv_c) v.push_back("c1 <= conv_c");
  return v;
}

void require_valid(const CountTable& t) {
  auto v = validate_count_table(t);
  if (v.empty()) return;
  std::string msg = "count table invariant violations:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw Error(ErrorCode::validation, msg);
}

CountTable merge(const CountTable& a, const CountTable& b) {
  CountTable m;
  m.tw1 = a.tw1 + b.tw1;
  m.tw0 = a.tw0 + b.tw0;
  m.tl1 = a.tl1 + b.tl1;
  m.tl0 = a.tl0 + b.tl0;
  m.c1 = a.c1 + b.c1;
  m.c0 = a.c0 + b.c0;
  m.conv_t = a.conv_t + b.conv_t;
  m.conv_tw = a.conv_tw + b.conv_tw;
  m.conv_c = a.conv_c + b.conv_c;
  m.uniq_t = a.uniq_t + b.uniq_t;
  m.uniq_tw = a.uniq_tw + b.uniq_tw;
  m.uniq_c = a.uniq_c + b.uniq_c;
  return m;
}

namespace {
constexpr const char* kFields[] = {"tw1", "tw0", "tl1", "tl0", "c1", "c0",
                                   "conv_t", "conv_tw", "conv_c",
                                   "uniq_t", "uniq_tw", "uniq_c"};

std::uint64_t* field_ptr(CountTable& t, int i) {
  std::uint64_t* ptrs[] = {&t.tw1, &t.tw0, &t.tl1, &t.tl0, &t.c1, &t.c0,
                           &t.conv_t, &t.conv_tw, &t.conv_c,
                           &t.uniq_t, &t.uniq_tw, &t.uniq_c};
  return ptrs[i];
}
}  // namespace

std::string count_table_to_json(const CountTable& t) {
  nlohmann::ordered_json j;
  CountTable copy = t;
  for (int i = 0; i < 12; ++i) j[kFields[i]] = *field_ptr(copy, i);
  return j.dump();
}

CountTable count_table_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object())
    throw ParseError("<document>", "count table must be a JSON object");
  CountTable t;
  for (int i = 0; i < 12; ++i) {
    auto it = j.find(kFields[i]);
    if (it == j.end())
      throw ParseError(kFields[i], std::string("missing count field '") + kFields[i] + "'");
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0))
      throw ParseError(kFields[i],
                       std::string("count field '") + kFields[i] + "' must be a non-negative integer");
    *field_ptr(t, i) = it->get<std::uint64_t>();
  }
  return t;
}

}  // namespace adlift
