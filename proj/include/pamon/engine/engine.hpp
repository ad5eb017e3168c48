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
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pamon/compiler/purpose.hpp"
#include "pamon/policy/policy.hpp"

namespace pamon {

/// Partial assignment of across-variables to subjects.
class BindingStore {
 public:
  const std::map<std::string, std::string>& bindings() const { return map_; }
  std::optional<std::string> get(const std::string& var) const;
  bool bound(const std::string& var) const { return map_.count(var) > 0; }
  bool empty() const { return map_.empty(); }

  /// The store extended with var -> subject, or nullopt when `var` already
  /// holds another subject or a constraint against a bound variable fails.
  std::optional<BindingStore> bind(const std::string& var, const std::string& subject,
                                   const std::vector<VarConstraint>& constraints) const;
  /// Would binding var -> subject succeed?
  bool admits(const std::string& var, const std::string& subject,
              const std::vector<VarConstraint>& constraints) const;
  /// All constraints hold among bound variables.
  bool consistent(const std::vector<VarConstraint>& constraints) const;

  auto operator<=>(const BindingStore&) const = default;

 private:
  std::map<std::string, std::string> map_;
};

struct Configuration {
  std::size_t state = 0;
  BindingStore store;

  auto operator<=>(const Configuration&) const = default;
};

using ConfigSet = std::set<Configuration>;

ConfigSet initial_configs(const SymbolicAutomaton& a);
bool any_accepting(const SymbolicAutomaton& a, const ConfigSet& cfgs);

/// Do the guard's checks pass for this subject, owner and purpose?
bool checks_pass(const Policy& p, const std::set<Action>& checks, const std::string& subject,
                 const std::string& owner, const std::string& purpose);

/// Successors of `cfgs` on request `r`: edges on r.task whose checks pass and
/// whose subject binding (if any) keeps the store consistent.
ConfigSet step_configs(const SymbolicAutomaton& a, const Policy& p, const ConfigSet& cfgs, const Request& r);

struct SearchStats {
  std::size_t states_explored = 0;
  std::size_t substitutions_tried = 0;
};

struct Witness {
  std::vector<Request> requests;
  /// Across-variable values used by the witness, including ones fixed by
  /// the starting stores.
  std::map<std::string, std::string> substitution;
};

/// A request sequence leading `cfgs` to acceptance, or nullopt.
///
/// Free across-variables are substituted lexicographically over subjects in
/// declaration order, restricted to subjects that pass the task's checks. For
/// each substitution a breadth-first search runs over (state, variables used
/// so far); constraints are checked only among used or already bound
/// variables, so a constraint on a task the path never executes is ignored.
std::optional<Witness> reachable_accepting(const SymbolicAutomaton& a, const Policy& p, const ConfigSet& cfgs,
                                           const std::string& wid = "wid", SearchStats* stats = nullptr);

/// Raised when grounding or determinization would exceed the state cap.
class GroundingCapExceeded : public Error {
 public:
  explicit GroundingCapExceeded(std::size_t cap)
      : Error("grounding cap of " + std::to_string(cap) + " states exceeded"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

constexpr std::size_t kDefaultGroundingCap = 1'000'000;

struct GroundLetter {
  std::string subject;
  std::string task;
  std::string owner;
  auto operator<=>(const GroundLetter&) const = default;
};

/// subjects x tasks of `a` x owners, in declaration order.
std::vector<GroundLetter> ground_letters(const SymbolicAutomaton& a, const Policy& p);

/// Nondeterministic automaton over ground requests; states are the reachable
/// configurations.
class GroundAutomaton {
 public:
  std::size_t size() const { return configs_.size(); }
  const std::string& purpose() const { return purpose_; }
  const std::vector<GroundLetter>& letters() const { return letters_; }
  const Configuration& config(std::size_t s) const { return configs_[s]; }
  bool accepting(std::size_t s) const { return accepting_[s] != 0; }
  /// Successors of state s on letter index l.
  const std::vector<std::size_t>& next(std::size_t s, std::size_t l) const { return next_[s * letters_.size() + l]; }
  std::optional<std::size_t> letter_of(const Request& r) const;
  bool accepts(const std::vector<Request>& trace) const;

 private:
  friend GroundAutomaton ground(const SymbolicAutomaton& a, const Policy& p, std::size_t cap);

  std::string purpose_;
  std::vector<GroundLetter> letters_;
  std::vector<Configuration> configs_;
  std::vector<char> accepting_;
  std::vector<std::vector<std::size_t>> next_;
};

GroundAutomaton ground(const SymbolicAutomaton& a, const Policy& p, std::size_t cap = kDefaultGroundingCap);

/// Complete deterministic automaton over ground letters. State 0 is initial.
class Dfa {
 public:
  std::size_t size() const { return accepting_.size(); }
  const std::string& purpose() const { return purpose_; }
  const std::vector<GroundLetter>& letters() const { return letters_; }
  bool accepting(std::size_t s) const { return accepting_[s] != 0; }
  std::size_t next(std::size_t s, std::size_t l) const { return next_[s * letters_.size() + l]; }
  std::optional<std::size_t> letter_of(const Request& r) const;
  /// Throws when a request is not a letter of this automaton.
  bool accepts(const std::vector<Request>& trace) const;

 private:
  friend Dfa determinize(const GroundAutomaton& g, std::size_t cap);
  friend Dfa complement(Dfa d);

  std::string purpose_;
  std::vector<GroundLetter> letters_;
  std::vector<char> accepting_;
  std::vector<std::size_t> next_;
};

/// Subset construction from the initial state; the empty subset is the sink.
Dfa determinize(const GroundAutomaton& g, std::size_t cap = kDefaultGroundingCap);
Dfa complement(Dfa d);

/// complement(determinize(ground(a, p))): accepts exactly the request traces
/// that `a` rejects under `p`.
Dfa ground_and_complement(const SymbolicAutomaton& a, const Policy& p, std::size_t cap = kDefaultGroundingCap);

/// Is there a nonempty continuation from `cfgs` after which no configuration
/// accepts? Explores the subset space lazily; throws GroundingCapExceeded when
/// more than `cap` configurations would have to be stored.
bool falsifiable(const SymbolicAutomaton& a, const Policy& p, const ConfigSet& cfgs,
                 std::size_t cap = kDefaultGroundingCap);

}  // namespace pamon
