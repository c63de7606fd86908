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

#include "core/identity.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace adlift {

void IdGraph::add_edge(const std::string& user_id, const std::string& cid) {
  if (user_id.empty() || cid.empty())
    throw Error(ErrorCode::validation, "id graph edge must have non-empty user_id and cid");
  auto [it, inserted] = user_to_cid_.emplace(user_id, cid);
  if (!inserted) {
    if (it->second != cid)
      throw Error(ErrorCode::validation,
                  "user_id '" + user_id + "' maps to conflicting cids '" + it->second +
                      "' and '" + cid + "'");
    return;  // identical duplicate row
  }
  ++cid_degree_[cid];
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

IdGraph IdGraph::parse_csv(const std::string& text) {
  IdGraph g;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (first) {
      first = false;
      if (t != "user_id,cid")
        throw ParseError("header", "cid graph must start with header 'user_id,cid', got '" + t + "'");
      continue;
    }
    auto comma = t.find(',');
    if (comma == std::string::npos)
      throw ParseError("cid", "line " + std::to_string(line_no) + ": expected 'user_id,cid'");
    g.add_edge(trim(t.substr(0, comma)), trim(t.substr(comma + 1)));
  }
  if (first) throw ParseError("header", "cid graph file is empty");
  return g;
}

IdGraph IdGraph::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open cid graph: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

const std::string* IdGraph::lookup(const std::string& user_id) const {
  auto it = user_to_cid_.find(user_id);
  return it == user_to_cid_.end() ? nullptr : &it->second;
}

int IdGraph::degree(const std::string& cid) const {
  auto it = cid_degree_.find(cid);
  return it == cid_degree_.end() ? 0 : it->second;
}

RemapResult remap_to_cid(std::span<const ImpressionRecord> impressions,
                         std::span<const EventRecord> events,
                         const IdGraph& graph, int min_degree) {
  if (min_degree < 1) throw Error(ErrorCode::config, "min_degree must be >= 1");
  RemapResult out;
  auto resolve = [&](const std::string& u) -> const std::string* {
    const std::string* cid = graph.lookup(u);
    if (!cid) {
      ++out.discarded_unmapped;
      return nullptr;
    }
    if (graph.degree(*cid) < min_degree) {
      ++out.discarded_low_degree;
      return nullptr;
    }
    return cid;
  };
  for (const auto& r : impressions) {
    if (const std::string* cid = resolve(r.user_id.value)) {
      ImpressionRecord c = r;
      c.user_id.value = *cid;
      out.impressions.push_back(std::move(c));
    }
  }
  for (const auto& r : events) {
    if (const std::string* cid = resolve(r.user_id.value)) {
      EventRecord c = r;
      c.user_id.value = *cid;
      out.events.push_back(std::move(c));
    }
  }
  return out;
}

double diluted_atl(double true_lift, double holdout, int devices_per_consumer) {
  if (devices_per_consumer < 1)
    throw Error(ErrorCode::domain, "devices_per_consumer must be >= 1");
  if (!(holdout > 0.0 && holdout < 1.0))
    throw Error(ErrorCode::domain, "holdout must be in (0,1)");
  if (!(true_lift > -1.0))
    throw Error(ErrorCode::domain, "true lift must be > -1");
  const double pk = std::pow(holdout, devices_per_consumer - 1);
  const double denom = 1.0 + true_lift - true_lift * pk;
  if (!(denom > 0.0))
    throw Error(ErrorCode::domain, "diluted lift undefined: 1 + a - a*p^(k-1) <= 0");
  return true_lift * pk / denom;
}

double multidevice_skew_factor(double holdout) {
  if (!(holdout > 0.0 && holdout <= 1.0))
    throw Error(ErrorCode::domain, "holdout must be in (0,1]");
  return (2.0 - holdout) / (1.0 + holdout);
}

}  // namespace adlift
