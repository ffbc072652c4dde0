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

#ifndef TMKIT_ENGINE_HPP_
#define TMKIT_ENGINE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tmkit/error.hpp"
#include "tmkit/model.hpp"
#include "tmkit/script.hpp"
#include "tmkit/trace.hpp"

namespace tmkit::engine {

struct Thing {
  std::string id;          // "#<n>", unique within a run
  std::string origin;      // thimac whose Create node brought it into being
  Record attributes;
  std::string thimac;      // current location
  std::string node;        // empty while the thing sits in storage

  friend bool operator==(const Thing&, const Thing&) = default;
};

struct State {
  // Insertion-ordered instances per thimac that has storage.
  std::map<std::string, std::vector<Thing>> storages;
  // Machine-variable valuation per thimac.
  std::map<std::string, std::map<std::string, Value>> variables;
  // Things resting at a node outside any storage.
  std::vector<Thing> in_flight;
  std::int64_t step = 0;
  std::uint64_t next_thing = 0;
  // Most recent step that produced an occurrence (0: none yet).
  std::int64_t last_event_step = 0;
  // Events that occurred at last_event_step.
  std::vector<std::string> last_events;
  // Attributes of the most recently created or flowed thing.
  std::optional<Record> context;

  const Value* variable(const std::string& thimac, const std::string& name) const;
  const Thing* find_instance(const std::string& thimac, const std::string& id) const;
  // Number of things with `id` across storages and in-flight positions.
  std::size_t count_thing(const std::string& id) const;

  friend bool operator==(const State&, const State&) = default;
};

// What was visible when a node fired: the flowing thing's attributes
// overlaid with the machine variables in the node owner's scope (inner
// declarations win), captured after the node's updates ran.
struct Firing {
  std::string node;
  Record scope;
};

struct StepRecord {
  std::vector<Firing> firings;
};

struct StepResult {
  std::vector<Occurrence> occurrences;
  std::vector<Message> messages;
  StepRecord record;
};

struct RunResult {
  State state;
  Trace trace;
  // First runtime error; statements after it were not executed.
  std::optional<Error> error;
  std::size_t executed = 0;
};

// Deterministic interpreter for one bundle. Expressions are compiled once at
// construction (throws Error("BadExpression")). Runtime errors are thrown as
// Error with codes UnknownInstance, UnknownThimac, UnknownEvent, StorageMiss,
// NoFlowPath, GuardTypeError, TypeError, UnboundName and FiringLimit.
class Engine {
 public:
  explicit Engine(const Bundle& bundle);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const Bundle& bundle() const { return bundle_; }

  State init_state() const;

  // Executes one statement and advances the step by one. `state` is only
  // modified when the statement succeeds.
  StepResult exec_statement(State& state, const dsl::Statement& statement) const;

  // Left fold of exec_statement; stops at the first error.
  RunResult run_script(const dsl::Script& script) const;

  std::vector<Occurrence> detect_occurrences(const StepRecord& record,
                                             std::int64_t time) const;

 private:
  struct Compiled;
  class Step;

  const Bundle& bundle_;
  std::unique_ptr<const Compiled> compiled_;
};

State init_state(const Bundle& bundle);
RunResult run_script(const Bundle& bundle, const dsl::Script& script);
std::vector<Occurrence> detect_occurrences(const Bundle& bundle, const StepRecord& record,
                                           std::int64_t time);

}  // namespace tmkit::engine

#endif  // TMKIT_ENGINE_HPP_
