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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pamon/ltlf/formula.hpp"
#include "pamon/ltlf/semantics.hpp"

namespace pamon::ltlf {

/// The letters an automaton reads. Bit i of a letter is atom i.
struct Alphabet {
  std::vector<std::string> atoms;
  std::vector<std::uint64_t> letters;

  /// Every subset of `atoms` (at most 16 atoms).
  static Alphabet powerset(std::vector<std::string> atoms);
  /// Exactly one atom true per letter.
  static Alphabet singletons(std::vector<std::string> atoms);

  /// Projects `l` onto `atoms`; nullopt when the projection is not a letter
  /// of this alphabet.
  std::optional<std::uint64_t> encode(const Letter& l) const;
  Letter decode(std::uint64_t letter) const;
  bool contains(std::uint64_t letter) const;
};

struct PropEdge {
  std::size_t to;
  std::uint64_t letter;
};

/// Nondeterministic automaton for an LTLf formula.
///
/// A state is a set of obligations (NNF formulas) that must hold from the
/// next instant on. Two constants double as markers: `true` in the set means
/// the next instant must exist, `false` means it must not. A state accepts at
/// the end of the trace iff it does not contain `true`. The initial state
/// requires an instant, so the empty word is never accepted.
class PropAutomaton {
 public:
  std::size_t initial() const { return initial_; }
  std::size_t size() const { return obligations_.size(); }
  std::size_t edge_count() const;
  bool accepting(std::size_t s) const { return accepting_[s] != 0; }
  const std::vector<PropEdge>& out(std::size_t s) const { return out_[s]; }
  const std::vector<Formula>& obligations(std::size_t s) const { return obligations_[s]; }
  const Alphabet& alphabet() const { return alphabet_; }

  /// Successor states of `states` on `letter`, sorted and unique.
  std::vector<std::size_t> post(const std::vector<std::size_t>& states, std::uint64_t letter) const;
  bool accepts(const PropTrace& t) const;

 private:
  friend PropAutomaton build_automaton(const Formula& f, Alphabet alphabet);

  Alphabet alphabet_;
  std::size_t initial_ = 0;
  std::vector<std::vector<Formula>> obligations_;
  std::vector<char> accepting_;
  std::vector<std::vector<PropEdge>> out_;
};

/// Tableau construction over the given alphabet. States are generated on the
/// fly from the initial obligation set {nnf(f), true}; at most
/// 2^(|subformulas of nnf(f)| + 2) of them exist.
PropAutomaton build_automaton(const Formula& f, Alphabet alphabet);

/// Convenience: the powerset alphabet over the atoms of `f`.
PropAutomaton build_automaton(const Formula& f);

/// Is there a nonempty word accepted by both automata? The alphabets must
/// have identical atom lists. Returns one such word when it exists.
std::optional<PropTrace> intersection_witness(const PropAutomaton& a, const PropAutomaton& b);

}  // namespace pamon::ltlf
