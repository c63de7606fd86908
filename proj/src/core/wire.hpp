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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/records.hpp"

namespace adlift {

// JSON Lines wire formats, one record per line:
//   bidopp     {"u":...,"t":...,"r":...,"e":...}
//   impression {"u":...,"t":...,"c":...,"tag":...}
//   event      {"u":...,"t":...,"c":...}
enum class LogKind { bidopp, impression, event };

BidOppRecord parse_bidopp_line(const std::string& line);
ImpressionRecord parse_impression_line(const std::string& line);
EventRecord parse_event_line(const std::string& line);

std::string serialize(const BidOppRecord& r);
std::string serialize(const ImpressionRecord& r);
std::string serialize(const EventRecord& r);

// Streams a JSONL file line by line. Parse failures are rethrown with the
// byte offset of the offending line and the file path in the message.
void read_impression_log(const std::string& path,
                         const std::function<void(const ImpressionRecord&)>& sink);
void read_event_log(const std::string& path,
                    const std::function<void(const EventRecord&)>& sink);
void read_bidopp_log(const std::string& path,
                     const std::function<void(const BidOppRecord&)>& sink);

std::vector<ImpressionRecord> load_impressions(const std::string& path);
std::vector<EventRecord> load_events(const std::string& path);
std::vector<BidOppRecord> load_bidopps(const std::string& path);

}  // namespace adlift
