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

#include <deque>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "pamon/monitor/monitor.hpp"

namespace pamon::testing {

/// Every ground request of the instance's purpose under its snapshot.
inline std::vector<Request> instance_letters(const MonitorState& s) {
  const auto a = s.snapshot()->automaton(s.purpose());
  std::vector<Request> out;
  for (const auto& l : ground_letters(*a, s.snapshot()->policy())) {
    out.push_back({s.wid(), l.subject, l.task, l.owner, s.purpose()});
  }
  return out;
}

/// Breadth-first walk over monitor states reached by granted requests, up to
/// `depth` requests, merging states with equal configurations. `visit` sees
/// each state before the step, the request, the result and the state after.
inline void explore(const MonitorState& init, std::size_t depth,
                    const std::function<void(const MonitorState&, const Request&, const StepResult&,
                                             const MonitorState&)>& visit) {
  const auto letters = instance_letters(init);
  std::set<ConfigSet> seen{init.configs()};
  std::deque<MonitorState> frontier{init};
  for (std::size_t d = 0; d < depth && !frontier.empty(); ++d) {
    std::deque<MonitorState> next;
    for (const auto& s : frontier) {
      for (const auto& r : letters) {
        MonitorState after = s;
        const StepResult res = step(after, r);
        visit(s, r, res, after);
        if (res.decision == Decision::Grant && seen.insert(after.configs()).second) next.push_back(std::move(after));
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace pamon::testing
