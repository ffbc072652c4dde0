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

#ifndef TMKIT_TESTS_TEST_SUPPORT_HPP_
#define TMKIT_TESTS_TEST_SUPPORT_HPP_

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tmkit/dsl.hpp"
#include "tmkit/engine.hpp"
#include "tmkit/script.hpp"

namespace tmkit::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(TMKIT_CORPUS_DIR) + "/" + name;
}

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(corpus_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing corpus file " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Bundle load_corpus_bundle(const std::string& name) {
  auto r = dsl::load_model(read_corpus(name));
  if (!r.ok()) throw std::runtime_error("corpus model " + name + " does not load");
  return *r.value;
}

inline dsl::Script parse_script_or_throw(const std::string& text) {
  auto r = dsl::parse_script(text);
  if (!r.ok()) throw std::runtime_error("script does not parse: " + r.diagnostics.front().message);
  return *r.value;
}

inline const char* const kModels[] = {"cart.tm", "flight.tm", "order.tm", "edp.tm"};

}  // namespace tmkit::testing

#endif  // TMKIT_TESTS_TEST_SUPPORT_HPP_
