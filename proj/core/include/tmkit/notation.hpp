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

#ifndef TMKIT_NOTATION_HPP_
#define TMKIT_NOTATION_HPP_

#include "tmkit/model.hpp"

namespace tmkit {

// Expands every cross-machine flow arc A->B whose source is not a Transfer
// node into A -> Release -> Transfer(out) -> Transfer(in) -> Receive -> B.
// Inserted nodes are named "f<k>.release", "f<k>.transfer_out",
// "f<k>.transfer_in" and "f<k>.receive", where k is the 1-based index of the
// expanded arc. Throws Error("InvalidModel") when the model does not
// validate or a generated id collides.
StaticModel canonicalize(const StaticModel& model);

// Collapses Release -> Transfer -> Transfer -> Receive chains (no other
// incident arcs, no annotations on the chain nodes) back to a single arc.
// Throws Error("InvalidModel") unless the model is canonical.
StaticModel simplify(const StaticModel& model);

}  // namespace tmkit

#endif  // TMKIT_NOTATION_HPP_
