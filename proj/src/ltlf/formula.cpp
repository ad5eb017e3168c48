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

#include "pamon/ltlf/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "pamon/error.hpp"

namespace pamon::ltlf {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> kids;
  std::size_t hash;
  std::size_t size;
  std::size_t depth;
};

namespace {

constexpr std::array<std::string_view, 7> kReserved = {"X", "G", "F", "U", "W", "true", "false"};

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

int precedence(Op op) {
  switch (op) {
    case Op::Implies:
      return 0;
    case Op::Or:
      return 1;
    case Op::And:
      return 2;
    case Op::Until:
    case Op::WeakUntil:
      return 3;
    case Op::Not:
    case Op::Next:
    case Op::Globally:
    case Op::Eventually:
      return 4;
    default:
      return 5;
  }
}

bool right_assoc(Op op) {
  return op == Op::Until || op == Op::WeakUntil || op == Op::Implies;
}

const char* symbol(Op op) {
  switch (op) {
    case Op::Not:
      return "!";
    case Op::Next:
      return "X ";
    case Op::Globally:
      return "G ";
    case Op::Eventually:
      return "F ";
    case Op::And:
      return " & ";
    case Op::Or:
      return " | ";
    case Op::Implies:
      return " -> ";
    case Op::Until:
      return " U ";
    case Op::WeakUntil:
      return " W ";
    default:
      return "";
  }
}

void print(std::ostream& os, const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
      os << f.name();
      return;
    case Op::True:
      os << "true";
      return;
    case Op::False:
      os << "false";
      return;
    default:
      break;
  }
  const int p = precedence(f.op());
  auto child = [&](const Formula& c, bool parens) {
    if (parens) os << '(';
    print(os, c);
    if (parens) os << ')';
  };
  if (is_unary(f.op())) {
    os << symbol(f.op());
    child(f.lhs(), precedence(f.lhs().op()) < p);
    return;
  }
  const int lp = precedence(f.lhs().op());
  const int rp = precedence(f.rhs().op());
  const bool ra = right_assoc(f.op());
  child(f.lhs(), ra ? lp <= p : lp < p);
  os << symbol(f.op());
  child(f.rhs(), ra ? rp < p : rp <= p);
}

int compare(const Formula& a, const Formula& b) {
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  if (a.op() == Op::Atom) return a.name().compare(b.name());
  if (a.op() == Op::True || a.op() == Op::False) return 0;
  if (int c = compare(a.lhs(), b.lhs()); c != 0) return c;
  if (is_binary(a.op())) return compare(a.rhs(), b.rhs());
  return 0;
}

}  // namespace

bool is_unary(Op op) {
  return op == Op::Not || op == Op::Next || op == Op::Globally || op == Op::Eventually;
}

bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::Until ||
         op == Op::WeakUntil;
}

bool is_temporal(Op op) {
  return op == Op::Next || op == Op::Until || op == Op::WeakUntil || op == Op::Globally ||
         op == Op::Eventually;
}

bool is_reserved_word(std::string_view s) {
  return std::find(kReserved.begin(), kReserved.end(), s) != kReserved.end();
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  const auto head = static_cast<unsigned char>(s.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char c : s) {
    const auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || u == '_')) return false;
  }
  return !is_reserved_word(s);
}

Formula Formula::make(Op op, std::string name, std::vector<Formula> kids) {
  std::size_t h = mix(0, static_cast<std::size_t>(op));
  std::size_t size = 1;
  std::size_t depth = 0;
  if (op == Op::Atom) h = mix(h, std::hash<std::string>{}(name));
  for (const auto& k : kids) {
    h = mix(h, k.hash());
    size += k.size();
    depth = std::max(depth, k.depth() + 1);
  }
  return Formula(std::make_shared<const Node>(
      Node{op, std::move(name), std::move(kids), h, size, depth}));
}

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw Error("invalid atom name '" + name + "'");
  return make(Op::Atom, std::move(name), {});
}

Formula Formula::truth() {
  static const Formula t = make(Op::True, {}, {});
  return t;
}

Formula Formula::falsity() {
  static const Formula f = make(Op::False, {}, {});
  return f;
}

Formula Formula::negation(Formula f) { return make(Op::Not, {}, {std::move(f)}); }
Formula Formula::conj(Formula l, Formula r) { return make(Op::And, {}, {std::move(l), std::move(r)}); }
Formula Formula::disj(Formula l, Formula r) { return make(Op::Or, {}, {std::move(l), std::move(r)}); }
Formula Formula::implies(Formula l, Formula r) {
  return make(Op::Implies, {}, {std::move(l), std::move(r)});
}
Formula Formula::next(Formula f) { return make(Op::Next, {}, {std::move(f)}); }
Formula Formula::until(Formula l, Formula r) { return make(Op::Until, {}, {std::move(l), std::move(r)}); }
Formula Formula::weak_until(Formula l, Formula r) {
  return make(Op::WeakUntil, {}, {std::move(l), std::move(r)});
}
Formula Formula::globally(Formula f) { return make(Op::Globally, {}, {std::move(f)}); }
Formula Formula::eventually(Formula f) { return make(Op::Eventually, {}, {std::move(f)}); }

Formula Formula::conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return truth();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return falsity();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::lhs() const { return node_->kids.at(0); }
const Formula& Formula::rhs() const { return node_->kids.at(1); }
std::size_t Formula::hash() const { return node_->hash; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  return compare(a, b) == 0;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  return compare(a, b) < 0;
}

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(os, f);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Formula& f) {
  print(os, f);
  return os;
}

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  for (const auto& g : subformulas(f)) {
    if (g.is_atom()) out.insert(g.name());
  }
  return out;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> order;
  std::unordered_set<Formula> seen;
  // Iterative post-order; formulas from fuzzers and workflow files can nest deeply.
  std::vector<std::pair<Formula, bool>> stack{{f, false}};
  while (!stack.empty()) {
    auto [g, expanded] = stack.back();
    stack.pop_back();
    if (seen.count(g)) continue;
    if (expanded) {
      seen.insert(g);
      order.push_back(g);
      continue;
    }
    stack.emplace_back(g, true);
    if (is_binary(g.op())) stack.emplace_back(g.rhs(), false);
    if (is_unary(g.op()) || is_binary(g.op())) stack.emplace_back(g.lhs(), false);
  }
  return order;
}

std::size_t temporal_operator_count(const Formula& f) {
  const auto subs = subformulas(f);
  return static_cast<std::size_t>(
      std::count_if(subs.begin(), subs.end(), [](const Formula& g) { return is_temporal(g.op()); }));
}

}  // namespace pamon::ltlf
