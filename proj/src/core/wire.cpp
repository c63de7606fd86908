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

#include "core/wire.hpp"

#include <fstream>

#include <json.hpp>

namespace adlift {

namespace {

using nlohmann::json;

json parse_object(const std::string& line) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded())
    throw ParseError("<line>", "not valid JSON: '" + line + "'");
  if (!j.is_object())
    throw ParseError("<line>", "expected a JSON object");
  return j;
}

std::string get_string(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end())
    throw ParseError(field, std::string("missing field '") + field + "'");
  if (!it->is_string())
    throw ParseError(field, std::string("field '") + field + "' must be a string");
  auto s = it->get<std::string>();
  if (s.empty())
    throw ParseError(field, std::string("field '") + field + "' must be non-empty");
  return s;
}

std::int64_t get_timestamp(const json& j, const char* field = "t") {
  auto it = j.find(field);
  if (it == j.end())
    throw ParseError(field, std::string("missing field '") + field + "'");
  if (!it->is_number_integer())
    throw ParseError(field, std::string("field '") + field + "' must be an integer");
  auto t = it->get<std::int64_t>();
  if (t < 0)
    throw ParseError(field, std::string("field '") + field + "' must be >= 0");
  return t;
}

template <typename Record, Record (*Parse)(const std::string&)>
void read_log(const std::string& path, const std::function<void(const Record&)>& sink) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open log file: " + path);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (line.empty()) continue;
    try {
      sink(Parse(line));
    } catch (const ParseError& e) {
      throw ParseError(e.field(),
                       path + " (byte " + std::to_string(line_start) +
                           "): " + e.what(),
                       line_start);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::unknown_tag) throw;
      throw Error(ErrorCode::unknown_tag,
                  path + " (byte " + std::to_string(line_start) + "): " + e.what());
    }
  }
}

}  // namespace

BidOppRecord parse_bidopp_line(const std::string& line) {
  json j = parse_object(line);
  BidOppRecord r;
  r.user_id.value = get_string(j, "u");
  r.timestamp = get_timestamp(j);
  r.request_id = get_string(j, "r");
  r.exchange_id = get_string(j, "e");
  return r;
}

ImpressionRecord parse_impression_line(const std::string& line) {
  json j = parse_object(line);
  ImpressionRecord r;
  r.user_id.value = get_string(j, "u");
  r.timestamp = get_timestamp(j);
  r.campaign_id = get_string(j, "c");
  r.tag = impression_tag_from_name(get_string(j, "tag"));
  return r;
}

EventRecord parse_event_line(const std::string& line) {
  json j = parse_object(line);
  EventRecord r;
  r.user_id.value = get_string(j, "u");
  r.timestamp = get_timestamp(j);
  r.campaign_id = get_string(j, "c");
  return r;
}

std::string serialize(const BidOppRecord& r) {
  nlohmann::ordered_json j;
  j["u"] = r.user_id.value;
  j["t"] = r.timestamp;
  j["r"] = r.request_id;
  j["e"] = r.exchange_id;
  return j.dump();
}

std::string serialize(const ImpressionRecord& r) {
  nlohmann::ordered_json j;
  j["u"] = r.user_id.value;
  j["t"] = r.timestamp;
  j["c"] = r.campaign_id;
  j["tag"] = impression_tag_name(r.tag);
  return j.dump();
}

std::string serialize(const EventRecord& r) {
  nlohmann::ordered_json j;
  j["u"] = r.user_id.value;
  j["t"] = r.timestamp;
  j["c"] = r.campaign_id;
  return j.dump();
}

void read_impression_log(const std::string& path,
                         const std::function<void(const ImpressionRecord&)>& sink) {
  read_log<ImpressionRecord, parse_impression_line>(path, sink);
}

void read_event_log(const std::string& path,
                    const std::function<void(const EventRecord&)>& sink) {
  read_log<EventRecord, parse_event_line>(path, sink);
}

void read_bidopp_log(const std::string& path,
                     const std::function<void(const BidOppRecord&)>& sink) {
  read_log<BidOppRecord, parse_bidopp_line>(path, sink);
}

std::vector<ImpressionRecord> load_impressions(const std::string& path) {
  std::vector<ImpressionRecord> out;
  read_impression_log(path, [&](const ImpressionRecord& r) { out.push_back(r); });
  return out;
}

std::vector<EventRecord> load_events(const std::string& path) {
  std::vector<EventRecord> out;
  read_event_log(path, [&](const EventRecord& r) { out.push_back(r); });
  return out;
}

std::vector<BidOppRecord> load_bidopps(const std::string& path) {
  std::vector<BidOppRecord> out;
  read_bidopp_log(path, [&](const BidOppRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace adlift
