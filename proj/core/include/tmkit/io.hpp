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

#ifndef TMKIT_IO_HPP_
#define TMKIT_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "tmkit/error.hpp"
#include "tmkit/model.hpp"
#include "tmkit/trace.hpp"

namespace tmkit::io {

enum class View { Static, Events, Behavior };

std::optional<View> parse_view(std::string_view text);

// Graphviz text. Static: thimacs as nested clusters, solid flow arcs, dashed
// trigger arcs. Events: one cluster per region. Behavior: chronology graph,
// non-repeatable edges drawn with a tee head. Output is sorted by id.
std::string to_dot(const Bundle& bundle, View view);

// JSON documents tagged {"format": "tmkit/1", "kind": "bundle"|"trace"}.
std::string to_json(const Bundle& bundle);
std::string to_json(const Trace& trace);

class DecodeError : public Error {
 public:
  DecodeError(std::string path, const std::string& message)
      : Error("DecodeError", path + ": " + message), path_(std::move(path)) {}

  // JSON pointer to the offending field.
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Decoders reject unknown fields and re-validate decoded bundles.
Bundle bundle_from_json(const std::string& text);
Trace trace_from_json(const std::string& text);
std::variant<Bundle, Trace> from_json(const std::string& text);

}  // namespace tmkit::io

#endif  // TMKIT_IO_HPP_
