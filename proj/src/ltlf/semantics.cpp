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

#include "pamon/ltlf/semantics.hpp"

#include <algorithm>

#include <unordered_map>

#include "pamon/error.hpp"

namespace pamon::ltlf {

namespace {

bool is_last_marker(const Formula& f) {
  return f.op() == Op::Next && f.lhs().op() == Op::True;
}

Formula push(const Formula& f, bool neg) {
  using F = Formula;
  switch (f.op()) {
    case Op::Atom:
      return neg ? F::negation(f) : f;
    case Op::True:
      return neg ? F::falsity() : f;
    case Op::False:
      return neg ? F::truth() : f;
    case Op::Not:
      return push(f.lhs(), !neg);
    case Op::And:
      return neg ? F::disj(push(f.lhs(), true), push(f.rhs(), true))
                 : F::conj(push(f.lhs(), false), push(f.rhs(), false));
    case Op::Or:
      return neg ? F::conj(push(f.lhs(), true), push(f.rhs(), true))
                 : F::disj(push(f.lhs(), false), push(f.rhs(), false));
    case Op::Implies:
      return neg ? F::conj(push(f.lhs(), false), push(f.rhs(), true))
                 : F::disj(push(f.lhs(), true), push(f.rhs(), false));
    case Op::Next:
      if (!neg) return F::next(push(f.lhs(), false));
      // !X g == last | X !g
      if (is_last_marker(f)) return F::negation(f);
      return F::disj(F::negation(F::next(F::truth())), F::next(push(f.lhs(), true)));
    case Op::Until:
      // !(a U b) == !b W (!a & !b)
      if (!neg) return F::until(push(f.lhs(), false), push(f.rhs(), false));
      return F::weak_until(push(f.rhs(), true),
                           F::conj(push(f.lhs(), true), push(f.rhs(), true)));
    case Op::WeakUntil:
      // !(a W b) == !b U (!a & !b)
      if (!neg) return F::weak_until(push(f.lhs(), false), push(f.rhs(), false));
      return F::until(push(f.rhs(), true), F::conj(push(f.lhs(), true), push(f.rhs(), true)));
    case Op::Globally:
      return neg ? F::eventually(push(f.lhs(), true)) : F::globally(push(f.lhs(), false));
    case Op::Eventually:
      return neg ? F::globally(push(f.lhs(), true)) : F::eventually(push(f.lhs(), false));
  }
  return f;
}

}  // namespace

Evaluator::Evaluator(const Formula& f) {
  const auto atoms = atoms_of(f);
  atoms_.assign(atoms.begin(), atoms.end());
  const auto subs = subformulas(f);
  std::unordered_map<Formula, std::size_t> index;
  index.reserve(subs.size());
  for (std::size_t k = 0; k < subs.size(); ++k) index.emplace(subs[k], k);
  nodes_.reserve(subs.size());
  for (const auto& g : subs) {
    Node n{g.op()};
    if (g.op() == Op::Atom) {
      n.lhs = static_cast<std::size_t>(std::lower_bound(atoms_.begin(), atoms_.end(), g.name()) - atoms_.begin());
    } else if (g.op() == Op::Not || g.op() == Op::Next || g.op() == Op::Globally || g.op() == Op::Eventually) {
      n.lhs = index.at(g.lhs());
    } else if (g.op() != Op::True && g.op() != Op::False) {
      n.lhs = index.at(g.lhs());
      n.rhs = index.at(g.rhs());
    }
    nodes_.push_back(n);
  }
  root_ = index.at(f);
}

std::vector<char> Evaluator::encode(const Letter& l) const {
  std::vector<char> out(atoms_.size(), 0);
  for (std::size_t i = 0; i < atoms_.size(); ++i) out[i] = l.count(atoms_[i]) > 0;
  return out;
}

void Evaluator::step(const char* letter, const char* next, char* out) const {
  const bool has_next = next != nullptr;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const Node& n = nodes_[k];
    bool v = false;
    switch (n.op) {
      case Op::Atom:
        v = letter[n.lhs];
        break;
      case Op::True:
        v = true;
        break;
      case Op::False:
        v = false;
        break;
      case Op::Not:
        v = !out[n.lhs];
        break;
      case Op::And:
        v = out[n.lhs] && out[n.rhs];
        break;
      case Op::Or:
        v = out[n.lhs] || out[n.rhs];
        break;
      case Op::Implies:
        v = !out[n.lhs] || out[n.rhs];
        break;
      case Op::Next:
        v = has_next && next[n.lhs];
        break;
      case Op::Until:
        v = out[n.rhs] || (out[n.lhs] && has_next && next[k]);
        break;
      case Op::WeakUntil:
        v = out[n.rhs] || (out[n.lhs] && (!has_next || next[k]));
        break;
      case Op::Globally:
        v = out[n.lhs] && (!has_next || next[k]);
        break;
      case Op::Eventually:
        v = out[n.lhs] || (has_next && next[k]);
        break;
    }
    out[k] = v;
  }
}

bool evaluate(const Formula& f, const PropTrace& t, std::size_t i) {
  const std::size_t n = t.size();
  if (i >= n) {
    throw Error("position " + std::to_string(i) + " out of range for trace of length " +
                std::to_string(n));
  }
  // Valuations are filled from the last position backwards.
  const Evaluator ev(f);
  const std::size_t w = ev.width();
  std::vector<char> val(w * n);
  for (std::size_t pos = n; pos-- > i;) {
    const auto letter = ev.encode(t[pos]);
    ev.step(letter.data(), pos + 1 < n ? &val[(pos + 1) * w] : nullptr, &val[pos * w]);
  }
  return ev.holds(&val[i * w]);
}

Formula to_nnf(const Formula& f) { return push(f, false); }

Formula negate_nnf(const Formula& f) { return push(f, true); }

bool is_nnf(const Formula& f) {
  for (const auto& g : subformulas(f)) {
    if (g.op() == Op::Implies) return false;
    if (g.op() == Op::Not && !g.lhs().is_atom() && !is_last_marker(g.lhs())) return false;
  }
  return true;
}

Formula inject_single_task_constraint(const std::vector<std::string>& input) {
  if (input.empty()) throw Error("single-task constraint needs at least one task");
  std::vector<std::string> tasks;
  for (const auto& t : input) {
    if (std::find(tasks.begin(), tasks.end(), t) == tasks.end()) tasks.push_back(t);
  }
  std::vector<Formula> some;
  for (const auto& t : tasks) some.push_back(Formula::atom(t));
  std::vector<Formula> exclusive;
  for (const auto& a : tasks) {
    for (const auto& b : tasks) {
      if (a == b) continue;
      exclusive.push_back(
          Formula::implies(Formula::atom(a), Formula::negation(Formula::atom(b))));
    }
  }
  return Formula::conj(Formula::globally(Formula::disj_all(some)),
                       Formula::globally(Formula::conj_all(exclusive)));
}

}  // namespace pamon::ltlf
