// Copyright 2026 The pamon Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <random>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace pamon::testing {

struct PolicyShape {
  std::size_t max_subjects = 2;
  std::size_t max_tasks = 3;
  std::size_t max_constraints = 1;
  std::size_t max_pairs = 2;  // sod plus bod
  int depth = 2;
};

/// Small random policy over purpose `p`: at least two tasks, one to three
/// subjects, one or two owners, two objects and a single action. Each tuple
/// is present with probability 1/2 or more.
inline Policy random_policy(std::mt19937& rng, const PolicyShape& shape = {}) {
  const std::vector<std::string> all_tasks = {"a", "b", "c", "d", "e", "f"};
  const std::vector<std::string> all_subjects = {"s1", "s2", "s3"};
  const auto between = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
  const std::size_t k = between(2, shape.max_tasks);
  const std::vector<std::string> tasks(all_tasks.begin(), all_tasks.begin() + static_cast<long>(k));
  const std::size_t n = between(1, shape.max_subjects);
  const std::vector<std::string> subjects(all_subjects.begin(), all_subjects.begin() + static_cast<long>(n));
  std::vector<std::string> owners = {"o1"};
  if (rng() % 2) owners.push_back("o2");
  std::vector<ltlf::Formula> constraints;
  const std::size_t c = between(1, shape.max_constraints);
  for (std::size_t i = 0; i < c; ++i) constraints.push_back(random_formula(rng, tasks, shape.depth));
  Policy p = make_policy(tasks, constraints, subjects, owners);
  p.add_action("r");
  p.add_object("x");
  p.add_object("y");
  for (const auto& t : tasks) {
    if (rng() % 2) p.add_uses(t, "r", "x");
    if (rng() % 3 == 0) p.add_uses(t, "r", "y");
  }
  for (const auto& s : p.subjects()) {
    for (const auto& o : {"x", "y"}) {
      if (rng() % 4 != 0) p.add_rcp(s, "r", o);
    }
  }
  for (const auto& w : owners) {
    for (const auto& o : {"x", "y"}) {
      if (rng() % 4 != 0) p.add_dcp(w, o, "p");
    }
  }
  const std::size_t pairs = rng() % (shape.max_pairs + 1);
  for (std::size_t i = 0; i < pairs; ++i) {
    const auto x = rng() % k;
    auto y = rng() % k;
    if (y == x) y = (x + 1) % k;
    const TaskPair tp(tasks[x], tasks[y]);
    if (p.sod("p").count(tp) || p.bod("p").count(tp)) continue;
    if (rng() % 2) {
      p.add_sod("p", tp.first, tp.second);
    } else {
      p.add_bod("p", tp.first, tp.second);
    }
  }
  return p;
}

}  // namespace pamon::testing
