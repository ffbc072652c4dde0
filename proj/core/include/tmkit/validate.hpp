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

#ifndef TMKIT_VALIDATE_HPP_
#define TMKIT_VALIDATE_HPP_

#include <vector>

#include "tmkit/diagnostic.hpp"
#include "tmkit/model.hpp"

namespace tmkit {

// Legal (from, to) action pairs for a flow arc inside one machine.
bool same_machine_flow_legal(ActionKind from, ActionKind to);
// Legal pairs for a flow arc between two machines under `notation`.
bool cross_machine_flow_legal(ActionKind from, ActionKind to, Notation notation);

// Collects every structural violation of `model`; never stops at the first.
//
// Arc diagnostics name their element as "flow#<i>" / "trigger#<i>" (0-based
// declaration index). Same-machine trigger arcs are reported as warnings.
std::vector<Diagnostic> validate_static_model(const StaticModel& model);

bool check_region(const Region& region, const StaticModel& model);

// Static model plus events, composites, behavior and constraints.
std::vector<Diagnostic> validate_bundle(const Bundle& bundle);

}  // namespace tmkit

#endif  // TMKIT_VALIDATE_HPP_
