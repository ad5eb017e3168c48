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
#include <functional>
#include <memory>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pamon::ltlf {

enum class Op {
  Atom,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Next,
  Until,
  WeakUntil,
  Globally,
  Eventually,
};

bool is_unary(Op op);
bool is_binary(Op op);
bool is_temporal(Op op);

/// True for `[A-Za-z_][A-Za-z0-9_]*` that is not one of the reserved
/// operator/constant keywords (X G F U W true false).
bool is_identifier(std::string_view s);
bool is_reserved_word(std::string_view s);

/// Immutable LTLf formula over task atoms. Nodes are shared; copies are cheap.
/// Equality and hashing are structural.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula truth();
  static Formula falsity();
  static Formula negation(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula next(Formula f);
  static Formula until(Formula l, Formula r);
  static Formula weak_until(Formula l, Formula r);
  static Formula globally(Formula f);
  static Formula eventually(Formula f);

  /// Left fold with `conj`/`disj`; an empty range yields `true`/`false`.
  static Formula conj_all(const std::vector<Formula>& fs);
  static Formula disj_all(const std::vector<Formula>& fs);

  Op op() const;
  const std::string& name() const;  // Atom only
  const Formula& lhs() const;       // unary operand or left operand
  const Formula& rhs() const;       // binary only
  std::size_t hash() const;
  std::size_t size() const;   // number of nodes in the tree
  std::size_t depth() const;  // atoms/constants have depth 0

  bool is_atom() const { return op() == Op::Atom; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  /// Total structural order, used to keep sets of formulas canonical.
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, std::string name, std::vector<Formula> kids);
  std::shared_ptr<const Node> node_;
};

/// Renders in the concrete syntax accepted by `parse`, with the minimum
/// parentheses the precedence table needs.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

std::set<std::string> atoms_of(const Formula& f);

/// Distinct subformulas, children before parents.
std::vector<Formula> subformulas(const Formula& f);

/// Number of temporal operator occurrences among distinct subformulas.
std::size_t temporal_operator_count(const Formula& f);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

}  // namespace pamon::ltlf

template <>
struct std::hash<pamon::ltlf::Formula> {
  std::size_t operator()(const pamon::ltlf::Formula& f) const noexcept { return f.hash(); }
};
