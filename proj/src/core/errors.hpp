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

#include <stdexcept>
#include <string>

namespace adlift {

enum class ErrorCode {
  io,
  parse,
  config,
  validation,
  mixed_arm,
  unknown_tag,
  empty_population,
  degenerate_probability,
  non_positive_baseline,
  zero_exposed_rate,
  domain,
  contract,
  internal,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
    case ErrorCode::config: return "config";
    case ErrorCode::validation: return "validation";
    case ErrorCode::mixed_arm: return "mixed_arm";
    case ErrorCode::unknown_tag: return "unknown_tag";
    case ErrorCode::empty_population: return "empty_population";
    case ErrorCode::degenerate_probability: return "degenerate_probability";
    case ErrorCode::non_positive_baseline: return "non_positive_baseline";
    case ErrorCode::zero_exposed_rate: return "zero_exposed_rate";
    case ErrorCode::domain: return "domain";
    case ErrorCode::contract: return "contract";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Malformed input line; carries the byte offset of the line within its
// source and the field that failed, so operators can locate bad records.
class ParseError : public Error {
 public:
  ParseError(std::string field, std::string message, std::size_t byte_offset = 0)
      : Error(ErrorCode::parse, std::move(message)),
        field_(std::move(field)),
        byte_offset_(byte_offset) {}

  const std::string& field() const { return field_; }
  std::size_t byte_offset() const { return byte_offset_; }
  void set_byte_offset(std::size_t off) { byte_offset_ = off; }

 private:
  std::string field_;
  std::size_t byte_offset_;
};

}  // namespace adlift
