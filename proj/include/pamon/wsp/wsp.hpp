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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pamon/engine/engine.hpp"
#include "pamon/ltlf/semantics.hpp"
#include "pamon/policy/policy.hpp"

namespace pamon {

struct AchievabilityStats {
  std::size_t states_explored = 0;
  std::size_t substitutions_tried = 0;
  double wall_seconds = 0;
};

struct AchievabilityResult {
  bool achievable = false;
  std::optional<std::vector<Request>> witness;
  std::optional<std::map<std::string, std::string>> substitution;
  AchievabilityStats stats;
};

/// Can a fresh instance `wid` of `purpose` run to completion under `p`?
AchievabilityResult purpose_achievable(const Policy& p, const std::string& purpose, const std::string& wid = "wid");

/// A finite trace satisfying f2 on which f1 never holds, if any.
std::optional<ltlf::PropTrace> sub_purpose_counterexample(const ltlf::Formula& f1, const ltlf::Formula& f2);

/// Does every finite trace satisfying f2 satisfy F f1?
bool sub_purpose(const ltlf::Formula& f1, const ltlf::Formula& f2);

}  // namespace pamon
