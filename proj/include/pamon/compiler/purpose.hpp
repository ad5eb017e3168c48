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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pamon/ltlf/formula.hpp"
#include "pamon/policy/policy.hpp"

namespace pamon {

/// The temporal obligation of a purpose: workflow constraints plus the
/// single-task axiom, the per-task authorization link and the duty pairs.
struct PurposeFormula {
  std::string purpose;
  std::vector<std::string> tasks;  // workflow tasks, header order
  ltlf::Formula phi;
  std::map<std::string, std::set<Action>> task_link;
  std::set<TaskPair> sod_pairs;
  std::set<TaskPair> bod_pairs;

  bool operator==(const PurposeFormula&) const = default;
};

PurposeFormula build_purpose_formula(const Policy& p, const std::string& purpose);

enum class Relation { Equal, NotEqual };

struct VarConstraint {
  std::string lhs;
  std::string rhs;
  Relation rel;

  bool holds(const std::string& a, const std::string& b) const { return (a == b) == (rel == Relation::Equal); }
  auto operator<=>(const VarConstraint&) const = default;
};

/// Subject variable bound by executions of `task`.
std::string subject_var(const std::string& task);

struct Guard {
  std::string task;
  /// Across-variable bound by the subject; nullopt means an edge-local
  /// existential (any authorized subject).
  std::optional<std::string> subject;
  /// (action, object) pairs to check against rcp and dcp; empty before
  /// specialization.
  std::set<Action> checks;

  bool operator==(const Guard&) const = default;
};

struct SymEdge {
  std::size_t to;
  Guard guard;

  bool operator==(const SymEdge&) const = default;
};

/// Automaton over requests. Each edge names one task; across-variables tie
/// the subjects of sod/bod tasks together through `constraints`.
class SymbolicAutomaton {
 public:
  const std::string& purpose() const { return purpose_; }
  const std::vector<std::string>& tasks() const { return tasks_; }
  std::size_t size() const { return out_.size(); }
  std::size_t initial() const { return initial_; }
  bool accepting(std::size_t s) const { return accepting_[s] != 0; }
  const std::vector<SymEdge>& out(std::size_t s) const { return out_[s]; }
  std::size_t edge_count() const;
  /// Across-variables in workflow task order.
  const std::vector<std::string>& across_vars() const { return across_vars_; }
  const std::vector<VarConstraint>& constraints() const { return constraints_; }
  bool specialized() const { return specialized_; }

  /// Does the propositional skeleton accept this task sequence? Ignores
  /// subjects, owners and checks.
  bool accepts_tasks(const std::vector<std::string>& tasks) const;

  bool operator==(const SymbolicAutomaton&) const = default;

 private:
  friend SymbolicAutomaton build_pre_automaton(const PurposeFormula& pf);
  friend SymbolicAutomaton specialize(const SymbolicAutomaton& pre, const Policy& p);

  std::string purpose_;
  std::vector<std::string> tasks_;
  std::size_t initial_ = 0;
  std::vector<char> accepting_;
  std::vector<std::vector<SymEdge>> out_;
  std::vector<std::string> across_vars_;
  std::vector<VarConstraint> constraints_;
  bool specialized_ = false;
};

/// Tableau automaton of `pf.phi` over one-task letters, lifted to guards.
SymbolicAutomaton build_pre_automaton(const PurposeFormula& pf);

/// Same state graph with every guard's checks set to uses(task).
SymbolicAutomaton specialize(const SymbolicAutomaton& pre, const Policy& p);

/// Graphviz text. Accepting states are double circles, the initial state is
/// bold; constraints go in a header comment.
std::string to_dot(const SymbolicAutomaton& a);

}  // namespace pamon
