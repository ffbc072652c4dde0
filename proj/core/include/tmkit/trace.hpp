// Copyright 2026 The tmkit Authors.
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

#ifndef TMKIT_TRACE_HPP_
#define TMKIT_TRACE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tmkit/value.hpp"

namespace tmkit {

struct Occurrence {
  std::string event;
  std::int64_t time = 0;
  Binding binding;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct Message {
  std::int64_t time = 0;
  std::string text;

  friend bool operator==(const Message&, const Message&) = default;
};

struct Trace {
  std::vector<Occurrence> occurrences;
  std::vector<Message> messages;

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Text form: "t=<step> <Event>(<p>=<v>,...)" per occurrence, then
// "t=<step> msg \"<text>\"" per message.
std::string serialize_trace(const Trace& trace);
// Inverse of serialize_trace. Throws Error("DecodeError").
Trace parse_trace(const std::string& text);

std::string format_occurrence(const Occurrence& occurrence);

}  // namespace tmkit

#endif  // TMKIT_TRACE_HPP_
