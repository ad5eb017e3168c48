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

#include "pamon/wsp/wsp.hpp"

#include <chrono>

#include "pamon/ltlf/automaton.hpp"

namespace pamon {

AchievabilityResult purpose_achievable(const Policy& p, const std::string& purpose, const std::string& wid) {
  const auto start = std::chrono::steady_clock::now();
  const SymbolicAutomaton a = specialize(build_pre_automaton(build_purpose_formula(p, purpose)), p);
  SearchStats st;
  const auto w = reachable_accepting(a, p, initial_configs(a), wid, &st);
  AchievabilityResult out;
  out.achievable = w.has_value();
  if (w) {
    out.witness = w->requests;
    out.substitution = w->substitution;
  }
  out.stats.states_explored = st.states_explored;
  out.stats.substitutions_tried = st.substitutions_tried;
  out.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::optional<ltlf::PropTrace> sub_purpose_counterexample(const ltlf::Formula& f1, const ltlf::Formula& f2) {
  using ltlf::Formula;
  std::set<std::string> atoms = ltlf::atoms_of(f1);
  atoms.merge(ltlf::atoms_of(f2));
  const auto alphabet = ltlf::Alphabet::powerset({atoms.begin(), atoms.end()});
  const auto lhs = ltlf::build_automaton(f2, alphabet);
  const auto rhs = ltlf::build_automaton(ltlf::negate_nnf(Formula::eventually(f1)), alphabet);
  return ltlf::intersection_witness(lhs, rhs);
}

bool sub_purpose(const ltlf::Formula& f1, const ltlf::Formula& f2) {
  return !sub_purpose_counterexample(f1, f2).has_value();
}

}  // namespace pamon
