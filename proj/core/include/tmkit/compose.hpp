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

#ifndef TMKIT_COMPOSE_HPP_
#define TMKIT_COMPOSE_HPP_

#include <string>
#include <vector>

#include "tmkit/model.hpp"

namespace tmkit {

// Hyphen-join of member ids. Members after the first drop the alphabetic
// prefix they share with the first one: [E2, E3] -> "E2-3".
std::string composite_id(const std::vector<std::string>& members);

// Binds `members` into a high-level event sharing `shared` variables and
// registers it in `bundle`. Throws Error("UnknownEvent"),
// Error("UnsharedVariable"), Error("DuplicateId") or Error("TooFewMembers").
const CompositeEvent& compose(Bundle& bundle, const std::vector<std::string>& members,
                              const std::vector<std::string>& shared);

}  // namespace tmkit

#endif  // TMKIT_COMPOSE_HPP_
