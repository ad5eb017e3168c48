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
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "pamon/ltlf/formula.hpp"

namespace pamon::ltlf {

/// The atoms that are true at one instant; every other atom is false.
using Letter = std::set<std::string>;

/// A finite word over truth assignments, indexed from 0.
class PropTrace {
 public:
  PropTrace() = default;
  PropTrace(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit PropTrace(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  void push_back(Letter l) { letters_.push_back(std::move(l)); }

 private:
  std::vector<Letter> letters_;
};

/// Finite-trace truth of `f` at position `i`. `X` is strong (a successor must
/// exist), `U` is strong, `W` also holds when its left operand holds until the
/// end of the trace. Throws pamon::Error when `i` is not a position of `t`.
bool evaluate(const Formula& f, const PropTrace& t, std::size_t i = 0);

/// The backward step behind `evaluate`, for callers that share suffixes
/// between many traces. A valuation holds one byte per subformula; a letter
/// holds one byte per atom, in atoms() order.
class Evaluator {
 public:
  explicit Evaluator(const Formula& f);

  /// Atoms of the formula, sorted.
  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t width() const { return nodes_.size(); }
  std::vector<char> encode(const Letter& l) const;
  /// Valuation of a position reading `letter`, given the valuation of the
  /// next position, or nullptr at the last one.
  void step(const char* letter, const char* next, char* out) const;
  bool holds(const char* valuation) const { return valuation[root_] != 0; }

 private:
  struct Node {
    Op op;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
  };
  std::vector<std::string> atoms_;
  std::vector<Node> nodes_;  // children before parents; atoms store their index in lhs
  std::size_t root_ = 0;
};

/// Negation normal form of `f`: `!` only in front of atoms or of `X true`
/// (the "last instant" marker; there is no weak-next operator to carry it).
Formula to_nnf(const Formula& f);

/// NNF of `!f`.
Formula negate_nnf(const Formula& f);

bool is_nnf(const Formula& f);

/// `G(t1 | ... | tn) & G(conj over ordered pairs a != b of (a -> !b))`.
/// The mutual-exclusion conjunct is `true` for a single task. Throws on an
/// empty task list.
Formula inject_single_task_constraint(const std::vector<std::string>& tasks);

}  // namespace pamon::ltlf
