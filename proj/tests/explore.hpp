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


#ifndef TMKIT_TESTS_EXPLORE_HPP_
#define TMKIT_TESTS_EXPLORE_HPP_

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tmkit/engine.hpp"
#include "tmkit/error.hpp"
#include "tmkit/script.hpp"

namespace tmkit::testing {

inline dsl::Statement single_statement(const std::string& line) {
  auto r = dsl::parse_script(line + "\n");
  if (!r.ok() || r.value->statements.size() != 1)
    throw std::runtime_error("not a single statement: " + line);
  return r.value->statements.front();
}

using ExploreVisit = std::function<void(const engine::State* before, const engine::State& after,
                                        const engine::StepResult* result,
                                        const std::vector<int>& path)>;

// Runs every statement sequence over `alphabet` of up to `depth` statements
// after `setup`. `visit` sees the state after setup (before == nullptr) and
// every transition; `result` is null when the statement failed. Returns the
// number of statements executed.
inline std::size_t explore(const Bundle& bundle, const std::vector<std::string>& setup,
                           const std::vector<std::string>& alphabet, int depth,
                           const ExploreVisit& visit) {
  engine::Engine engine(bundle);
  engine::State root = engine.init_state();
  for (const auto& line : setup) engine.exec_statement(root, single_statement(line));
  std::vector<dsl::Statement> stmts;
  for (const auto& line : alphabet) stmts.push_back(single_statement(line));

  std::size_t visited = 0;
  std::vector<int> path;
  std::function<void(const engine::State&)> go = [&](const engine::State& s) {
    if (static_cast<int>(path.size()) == depth) return;
    for (std::size_t i = 0; i < stmts.size(); ++i) {
      engine::State next = s;
      path.push_back(static_cast<int>(i));
      ++visited;
      try {
        engine::StepResult r = engine.exec_statement(next, stmts[i]);
        visit(&s, next, &r, path);
      } catch (const Error&) {
        visit(&s, next, nullptr, path);
      }
      go(next);
      path.pop_back();
    }
  };
  visit(nullptr, root, nullptr, path);
  go(root);
  return visited;
}

inline std::string describe(const std::vector<int>& path) {
  std::string out;
  for (int i : path) out += std::to_string(i) + " ";
  return out;
}

}  // namespace tmkit::testing

#endif  // TMKIT_TESTS_EXPLORE_HPP_
