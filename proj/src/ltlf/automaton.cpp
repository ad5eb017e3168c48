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

#include "pamon/ltlf/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "pamon/error.hpp"

namespace pamon::ltlf {

namespace {

using Obligations = std::vector<int>;  // sorted ids

constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr std::size_t kMaxStates = std::size_t{1} << 20;

bool subset_of(const Obligations& a, const Obligations& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// Drops duplicates and any set that strictly contains another one: more
/// obligations can only accept fewer continuations.
void minimize(std::vector<Obligations>& alts) {
  std::sort(alts.begin(), alts.end(), [](const Obligations& a, const Obligations& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
  std::vector<Obligations> kept;
  for (auto& a : alts) {
    const bool dominated = std::any_of(kept.begin(), kept.end(),
                                       [&](const Obligations& k) { return subset_of(k, a); });
    if (!dominated) kept.push_back(std::move(a));
  }
  alts = std::move(kept);
}

/// `false` marker forbids a next instant, `true` requires one.
std::optional<Obligations> normalize(Obligations o) {
  std::sort(o.begin(), o.end());
  o.erase(std::unique(o.begin(), o.end()), o.end());
  const bool must_end = std::binary_search(o.begin(), o.end(), kFalse);
  if (!must_end) return o;
  if (std::binary_search(o.begin(), o.end(), kTrue)) return std::nullopt;
  return Obligations{kFalse};
}

class Builder {
 public:
  explicit Builder(const Alphabet& alphabet) : alphabet_(alphabet) {
    intern(Formula::truth());
    intern(Formula::falsity());
    for (std::size_t i = 0; i < alphabet_.atoms.size(); ++i) bit_[alphabet_.atoms[i]] = i;
  }

  int intern(const Formula& f) {
    auto [it, inserted] = ids_.emplace(f, static_cast<int>(formulas_.size()));
    if (inserted) formulas_.push_back(f);
    return it->second;
  }

  const Formula& formula(int id) const { return formulas_[static_cast<std::size_t>(id)]; }

  std::vector<Obligations> product(const std::vector<Obligations>& a,
                                   const std::vector<Obligations>& b) {
    std::vector<Obligations> out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        Obligations u;
        std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(u));
        if (auto n = normalize(std::move(u))) out.push_back(std::move(*n));
      }
    }
    minimize(out);
    return out;
  }

  std::vector<Obligations> unite(std::vector<Obligations> a, const std::vector<Obligations>& b) {
    a.insert(a.end(), b.begin(), b.end());
    minimize(a);
    return a;
  }

  std::vector<Obligations> single(Obligations o) {
    auto n = normalize(std::move(o));
    if (!n) return {};
    return {std::move(*n)};
  }

  bool atom_true(const std::string& name, std::uint64_t letter) const {
    auto it = bit_.find(name);
    return it != bit_.end() && ((letter >> it->second) & 1U);
  }

  /// Alternatives for satisfying formula `id` at an instant carrying `letter`:
  /// each is the obligation set left for the next instant.
  const std::vector<Obligations>& expand(int id, std::uint64_t letter) {
    const auto key = std::make_pair(id, letter);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Formula f = formula(id);
    std::vector<Obligations> r;
    switch (f.op()) {
      case Op::True:
        r = {{}};
        break;
      case Op::False:
        break;
      case Op::Atom:
        if (atom_true(f.name(), letter)) r = {{}};
        break;
      case Op::Not:
        if (f.lhs().is_atom()) {
          if (!atom_true(f.lhs().name(), letter)) r = {{}};
        } else {
          // `!X true`: this is the last instant.
          r = {{kFalse}};
        }
        break;
      case Op::And: {
        const auto l = expand(intern(f.lhs()), letter);
        r = product(l, expand(intern(f.rhs()), letter));
        break;
      }
      case Op::Or: {
        const auto l = expand(intern(f.lhs()), letter);
        r = unite(l, expand(intern(f.rhs()), letter));
        break;
      }
      case Op::Next:
        r = single({intern(f.lhs()), kTrue});
        break;
      case Op::Until: {
        const auto now = expand(intern(f.rhs()), letter);
        const auto hold = expand(intern(f.lhs()), letter);
        r = unite(now, product(hold, single({id, kTrue})));
        break;
      }
      case Op::WeakUntil: {
        const auto now = expand(intern(f.rhs()), letter);
        const auto hold = expand(intern(f.lhs()), letter);
        r = unite(now, product(hold, single({id})));
        break;
      }
      case Op::Globally: {
        const auto now = expand(intern(f.lhs()), letter);
        r = product(now, single({id}));
        break;
      }
      case Op::Eventually: {
        const auto now = expand(intern(f.lhs()), letter);
        r = unite(now, single({id, kTrue}));
        break;
      }
      case Op::Implies:
        throw Error("internal: implication in NNF formula");
    }
    return memo_.emplace(key, std::move(r)).first->second;
  }

  std::vector<Obligations> step(const Obligations& state, std::uint64_t letter) {
    if (std::binary_search(state.begin(), state.end(), kFalse)) return {};
    std::vector<Obligations> alts{{}};
    for (int id : state) {
      if (id == kTrue) continue;
      alts = product(alts, expand(id, letter));
      if (alts.empty()) break;
    }
    return alts;
  }

 private:
  const Alphabet& alphabet_;
  std::unordered_map<std::string, std::size_t> bit_;
  std::unordered_map<Formula, int> ids_;
  std::vector<Formula> formulas_;
  std::map<std::pair<int, std::uint64_t>, std::vector<Obligations>> memo_;
};

}  // namespace

Alphabet Alphabet::powerset(std::vector<std::string> atoms) {
  if (atoms.size() > 16) throw Error("powerset alphabet limited to 16 atoms");
  Alphabet a;
  a.atoms = std::move(atoms);
  const std::uint64_t n = std::uint64_t{1} << a.atoms.size();
  for (std::uint64_t l = 0; l < n; ++l) a.letters.push_back(l);
  return a;
}

Alphabet Alphabet::singletons(std::vector<std::string> atoms) {
  if (atoms.size() > 64) throw Error("alphabet limited to 64 atoms");
  Alphabet a;
  a.atoms = std::move(atoms);
  for (std::size_t i = 0; i < a.atoms.size(); ++i) a.letters.push_back(std::uint64_t{1} << i);
  return a;
}

std::optional<std::uint64_t> Alphabet::encode(const Letter& l) const {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (l.count(atoms[i])) m |= std::uint64_t{1} << i;
  }
  if (!contains(m)) return std::nullopt;
  return m;
}

Letter Alphabet::decode(std::uint64_t letter) const {
  Letter l;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if ((letter >> i) & 1U) l.insert(atoms[i]);
  }
  return l;
}

bool Alphabet::contains(std::uint64_t letter) const {
  return std::find(letters.begin(), letters.end(), letter) != letters.end();
}

std::size_t PropAutomaton::edge_count() const {
  std::size_t n = 0;
  for (const auto& o : out_) n += o.size();
  return n;
}

std::vector<std::size_t> PropAutomaton::post(const std::vector<std::size_t>& states,
                                             std::uint64_t letter) const {
  std::vector<std::size_t> next;
  for (auto s : states) {
    for (const auto& e : out_[s]) {
      if (e.letter == letter) next.push_back(e.to);
    }
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return next;
}

bool PropAutomaton::accepts(const PropTrace& t) const {
  std::vector<std::size_t> cur{initial_};
  for (const auto& l : t.letters()) {
    auto m = alphabet_.encode(l);
    if (!m) return false;
    cur = post(cur, *m);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](std::size_t s) { return accepting(s); });
}

PropAutomaton build_automaton(const Formula& f, Alphabet alphabet) {
  PropAutomaton a;
  a.alphabet_ = std::move(alphabet);
  Builder b(a.alphabet_);

  std::map<Obligations, std::size_t> index;
  std::vector<Obligations> states;
  auto state_of = [&](Obligations o) {
    auto [it, inserted] = index.emplace(o, states.size());
    if (inserted) {
      if (states.size() >= kMaxStates) throw Error("automaton state limit exceeded");
      states.push_back(std::move(o));
    }
    return it->second;
  };

  // An unsatisfiable root keeps {false, true}: no edges and not accepting.
  auto init = normalize({b.intern(to_nnf(f)), kTrue});
  a.initial_ = state_of(init ? *init : Obligations{kTrue, kFalse});
  for (std::size_t s = 0; s < states.size(); ++s) {
    std::vector<PropEdge> edges;
    for (auto letter : a.alphabet_.letters) {
      const Obligations current = states[s];
      for (auto& next : b.step(current, letter)) {
        edges.push_back({state_of(std::move(next)), letter});
      }
    }
    a.out_.push_back(std::move(edges));
  }
  for (const auto& st : states) {
    std::vector<Formula> obl;
    for (int id : st) obl.push_back(b.formula(id));
    a.obligations_.push_back(std::move(obl));
    a.accepting_.push_back(!std::binary_search(st.begin(), st.end(), kTrue));
  }
  return a;
}

PropAutomaton build_automaton(const Formula& f) {
  const auto atoms = atoms_of(f);
  return build_automaton(f, Alphabet::powerset({atoms.begin(), atoms.end()}));
}

std::optional<PropTrace> intersection_witness(const PropAutomaton& a, const PropAutomaton& b) {
  if (a.alphabet().atoms != b.alphabet().atoms) {
    throw Error("intersection requires identical alphabets");
  }
  using Pair = std::pair<std::size_t, std::size_t>;
  struct Visit {
    Pair parent;
    std::uint64_t letter;
  };
  std::map<Pair, Visit> seen;
  std::deque<Pair> queue;
  const Pair start{a.initial(), b.initial()};
  seen.emplace(start, Visit{start, 0});
  queue.push_back(start);
  while (!queue.empty()) {
    const Pair cur = queue.front();
    queue.pop_front();
    if (cur != start && a.accepting(cur.first) && b.accepting(cur.second)) {
      std::vector<Letter> word;
      for (Pair p = cur; p != start; p = seen.at(p).parent) {
        word.push_back(a.alphabet().decode(seen.at(p).letter));
      }
      std::reverse(word.begin(), word.end());
      return PropTrace(std::move(word));
    }
    for (const auto& ea : a.out(cur.first)) {
      for (const auto& eb : b.out(cur.second)) {
        if (ea.letter != eb.letter) continue;
        const Pair nxt{ea.to, eb.to};
        if (seen.emplace(nxt, Visit{cur, ea.letter}).second) queue.push_back(nxt);
      }
    }
  }
  return std::nullopt;
}

}  // namespace pamon::ltlf
