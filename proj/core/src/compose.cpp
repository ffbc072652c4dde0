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

#include "tmkit/compose.hpp"

#include <algorithm>
#include <cctype>

#include "tmkit/error.hpp"

namespace tmkit {
namespace {

// Leading non-digit part of an id: "E" for "E12".
std::string_view alpha_prefix(std::string_view id) {
  std::size_t i = 0;
  while (i < id.size() && !std::isdigit(static_cast<unsigned char>(id[i]))) ++i;
  return id.substr(0, i);
}

}  // namespace

std::string composite_id(const std::vector<std::string>& members) {
  std::string out;
  if (members.empty()) return out;
  const std::string_view prefix = alpha_prefix(members.front());
  for (std::size_t i = 0; i < members.size(); ++i) {
    std::string_view m = members[i];
    if (i > 0) {
      out += '-';
      if (!prefix.empty() && alpha_prefix(m) == prefix && m.size() > prefix.size())
        m.remove_prefix(prefix.size());
    }
    out += m;
  }
  return out;
}

const CompositeEvent& compose(Bundle& bundle, const std::vector<std::string>& members,
                              const std::vector<std::string>& shared) {
  if (members.size() < 2) throw Error("TooFewMembers", "a composite binds at least two events");
  std::vector<const EventDef*> defs;
  for (const auto& m : members) {
    const EventDef* e = bundle.find_event(m);
    if (!e) throw Error("UnknownEvent", "'" + m + "' is not an event");
    defs.push_back(e);
  }
  for (const auto& s : shared) {
    bool found = std::any_of(defs.begin(), defs.end(),
                             [&](const EventDef* e) { return e->has_param(s); });
    if (!found)
      throw Error("UnsharedVariable", "'" + s + "' is not a parameter of any member event");
  }
  CompositeEvent c{composite_id(members), members, shared};
  if (bundle.find_composite(c.id) || bundle.find_event(c.id))
    throw Error("DuplicateId", "'" + c.id + "' already exists");
  bundle.composites.push_back(std::move(c));
  return bundle.composites.back();
}

}  // namespace tmkit
