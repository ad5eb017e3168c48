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

#include "pamon/engine/engine.hpp"

#include "pamon/policy/trace_io.hpp"

#include <algorithm>
#include <deque>

namespace pamon {

namespace {

const std::string* other_side(const VarConstraint& c, const std::string& var) {
  if (c.lhs == var) return &c.rhs;
  if (c.rhs == var) return &c.lhs;
  return nullptr;
}

std::optional<std::size_t> find_letter(const std::vector<GroundLetter>& letters, const std::string& purpose,
                                       const Request& r) {
  if (r.purpose != purpose) return std::nullopt;
  const GroundLetter key{r.subject, r.task, r.owner};
  auto it = std::find(letters.begin(), letters.end(), key);
  if (it == letters.end()) return std::nullopt;
  return static_cast<std::size_t>(it - letters.begin());
}

}  // namespace

std::optional<std::string> BindingStore::get(const std::string& var) const {
  auto it = map_.find(var);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

bool BindingStore::admits(const std::string& var, const std::string& subject,
                          const std::vector<VarConstraint>& constraints) const {
  if (auto cur = get(var)) return *cur == subject;
  for (const auto& c : constraints) {
    const std::string* w = other_side(c, var);
    if (!w) continue;
    if (*w == var) {
      if (!c.holds(subject, subject)) return false;
      continue;
    }
    if (auto val = get(*w); val && !c.holds(subject, *val)) return false;
  }
  return true;
}

std::optional<BindingStore> BindingStore::bind(const std::string& var, const std::string& subject,
                                               const std::vector<VarConstraint>& constraints) const {
  if (!admits(var, subject, constraints)) return std::nullopt;
  BindingStore s = *this;
  s.map_[var] = subject;
  return s;
}

bool BindingStore::consistent(const std::vector<VarConstraint>& constraints) const {
  for (const auto& c : constraints) {
    auto a = get(c.lhs);
    auto b = get(c.rhs);
    if (a && b && !c.holds(*a, *b)) return false;
  }
  return true;
}

ConfigSet initial_configs(const SymbolicAutomaton& a) { return {Configuration{a.initial(), {}}}; }

bool any_accepting(const SymbolicAutomaton& a, const ConfigSet& cfgs) {
  return std::any_of(cfgs.begin(), cfgs.end(), [&](const Configuration& c) { return a.accepting(c.state); });
}

bool checks_pass(const Policy& p, const std::set<Action>& checks, const std::string& subject,
                 const std::string& owner, const std::string& purpose) {
  for (const auto& c : checks) {
    if (!p.dcp(owner, c.object, purpose) || !p.rcp(subject, c.action, c.object)) return false;
  }
  return true;
}

ConfigSet step_configs(const SymbolicAutomaton& a, const Policy& p, const ConfigSet& cfgs, const Request& r) {
  ConfigSet out;
  for (const auto& cfg : cfgs) {
    for (const auto& e : a.out(cfg.state)) {
      if (e.guard.task != r.task) continue;
      if (!checks_pass(p, e.guard.checks, r.subject, r.owner, r.purpose)) continue;
      if (!e.guard.subject) {
        out.insert({e.to, cfg.store});
        continue;
      }
      if (auto s = cfg.store.bind(*e.guard.subject, r.subject, a.constraints())) out.insert({e.to, std::move(*s)});
    }
  }
  return out;
}

namespace {

/// Subjects and owners that can carry out an edge, independent of variables.
struct EdgeOptions {
  std::vector<std::string> subjects;  // pass the subject-side checks
  std::optional<std::string> owner;   // first owner releasing every object
};

class WitnessSearch {
 public:
  WitnessSearch(const SymbolicAutomaton& a, const Policy& p, std::string wid, SearchStats& stats)
      : a_(a), p_(p), wid_(std::move(wid)), stats_(stats) {
    for (std::size_t s = 0; s < a_.size(); ++s) {
      std::vector<EdgeOptions> opts;
      for (const auto& e : a_.out(s)) {
        EdgeOptions o;
        for (const auto& sub : p_.subjects()) {
          bool ok = true;
          for (const auto& c : e.guard.checks) ok = ok && p_.rcp(sub, c.action, c.object);
          if (ok) o.subjects.push_back(sub);
        }
        for (const auto& own : p_.owners()) {
          bool ok = true;
          for (const auto& c : e.guard.checks) ok = ok && p_.dcp(own, c.object, a_.purpose());
          if (ok) {
            o.owner = own;
            break;
          }
        }
        opts.push_back(std::move(o));
      }
      options_.push_back(std::move(opts));
    }
  }

  bool viable(std::size_t s, std::size_t i) const {
    return !options_[s][i].subjects.empty() && options_[s][i].owner.has_value();
  }

  /// Plain reachability of an accepting state over viable edges.
  bool accepting_reachable(const std::vector<std::size_t>& from) const {
    std::vector<char> seen(a_.size(), 0);
    std::deque<std::size_t> queue;
    for (auto s : from) {
      if (!seen[s]) {
        seen[s] = 1;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      const auto s = queue.front();
      queue.pop_front();
      if (a_.accepting(s)) return true;
      for (std::size_t i = 0; i < a_.out(s).size(); ++i) {
        const auto to = a_.out(s)[i].to;
        if (viable(s, i) && !seen[to]) {
          seen[to] = 1;
          queue.push_back(to);
        }
      }
    }
    return false;
  }

  std::optional<Witness> run(const BindingStore& store, const std::vector<std::size_t>& starts) {
    // free variables and their candidate subjects
    std::vector<std::string> free;
    std::vector<std::vector<std::string>> candidates;
    for (const auto& v : a_.across_vars()) {
      if (store.bound(v)) continue;
      free.push_back(v);
      std::vector<std::string> cand;
      for (const auto& sub : p_.subjects()) {
        if (subject_fits(v, sub)) cand.push_back(sub);
      }
      candidates.push_back(std::move(cand));
    }
    if (free.size() > 30) throw Error("too many across-variables for witness search");
    for (std::size_t i = 0; i < free.size(); ++i) index_[free[i]] = i;

    std::vector<std::size_t> pick(free.size(), 0);
    for (;;) {
      ++stats_.substitutions_tried;
      std::map<std::string, std::string> sigma;
      for (std::size_t i = 0; i < free.size(); ++i) {
        if (!candidates[i].empty()) sigma[free[i]] = candidates[i][pick[i]];
      }
      if (auto w = bfs(store, sigma, starts)) return w;
      // lexicographic odometer, last variable fastest
      std::size_t k = free.size();
      while (k > 0) {
        --k;
        const std::size_t n = std::max<std::size_t>(candidates[k].size(), 1);
        if (++pick[k] < n) break;
        pick[k] = 0;
        if (k == 0) return std::nullopt;
      }
      if (free.empty()) return std::nullopt;
    }
  }

 private:
  // Can `sub` execute some edge that binds `var`?
  bool subject_fits(const std::string& var, const std::string& sub) const {
    for (std::size_t s = 0; s < a_.size(); ++s) {
      for (std::size_t i = 0; i < a_.out(s).size(); ++i) {
        const auto& g = a_.out(s)[i].guard;
        if (g.subject != var) continue;
        const auto& subs = options_[s][i].subjects;
        if (std::find(subs.begin(), subs.end(), sub) != subs.end()) return true;
      }
    }
    return false;
  }

  std::optional<Witness> bfs(const BindingStore& store, const std::map<std::string, std::string>& sigma,
                             const std::vector<std::size_t>& starts) {
    using Node = std::pair<std::size_t, std::uint32_t>;  // state, used-variable mask
    struct Visit {
      Node parent;
      Request req;
      bool root;
    };
    std::map<Node, Visit> seen;
    std::deque<Node> queue;
    for (auto s : starts) {
      const Node n{s, 0};
      if (seen.emplace(n, Visit{n, {}, true}).second) queue.push_back(n);
    }
    auto value = [&](const std::string& var, std::uint32_t mask) -> std::optional<std::string> {
      if (auto v = store.get(var)) return v;
      auto it = index_.find(var);
      if (it != index_.end() && ((mask >> it->second) & 1U)) return sigma.at(var);
      return std::nullopt;
    };
    while (!queue.empty()) {
      const Node cur = queue.front();
      queue.pop_front();
      ++stats_.states_explored;
      const auto [s, mask] = cur;
      if (a_.accepting(s)) {
        Witness w;
        for (Node n = cur; !seen.at(n).root; n = seen.at(n).parent) w.requests.push_back(seen.at(n).req);
        std::reverse(w.requests.begin(), w.requests.end());
        w.substitution = store.bindings();
        for (const auto& [v, i] : index_) {
          if ((mask >> i) & 1U) w.substitution[v] = sigma.at(v);
        }
        return w;
      }
      for (std::size_t i = 0; i < a_.out(s).size(); ++i) {
        if (!viable(s, i)) continue;
        const auto& e = a_.out(s)[i];
        const auto& opt = options_[s][i];
        std::string subject;
        std::uint32_t next_mask = mask;
        if (e.guard.subject) {
          const std::string& var = *e.guard.subject;
          if (auto v = store.get(var)) {
            subject = *v;
          } else {
            auto it = sigma.find(var);
            if (it == sigma.end()) continue;  // no subject can bind it
            subject = it->second;
            next_mask |= std::uint32_t{1} << index_.at(var);
          }
          if (std::find(opt.subjects.begin(), opt.subjects.end(), subject) == opt.subjects.end()) continue;
          bool ok = true;
          for (const auto& c : a_.constraints()) {
            const std::string* w = other_side(c, var);
            if (!w) continue;
            if (auto val = value(*w, next_mask); val && !c.holds(subject, *val)) ok = false;
          }
          if (!ok) continue;
        } else {
          subject = opt.subjects.front();
        }
        const Node n{e.to, next_mask};
        Request r{wid_, subject, e.guard.task, *opt.owner, a_.purpose()};
        if (seen.emplace(n, Visit{cur, std::move(r), false}).second) queue.push_back(n);
      }
    }
    return std::nullopt;
  }

  const SymbolicAutomaton& a_;
  const Policy& p_;
  std::string wid_;
  SearchStats& stats_;
  std::vector<std::vector<EdgeOptions>> options_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace

std::optional<Witness> reachable_accepting(const SymbolicAutomaton& a, const Policy& p, const ConfigSet& cfgs,
                                           const std::string& wid, SearchStats* stats) {
  SearchStats local;
  SearchStats& st = stats ? *stats : local;
  if (cfgs.empty()) return std::nullopt;
  for (const auto& c : cfgs) {
    if (a.accepting(c.state)) {
      ++st.substitutions_tried;
      return Witness{{}, c.store.bindings()};
    }
  }
  std::map<BindingStore, std::vector<std::size_t>> groups;
  for (const auto& c : cfgs) groups[c.store].push_back(c.state);

  WitnessSearch search(a, p, wid, st);
  std::vector<std::size_t> all;
  for (const auto& c : cfgs) all.push_back(c.state);
  if (!search.accepting_reachable(all)) return std::nullopt;
  for (const auto& [store, states] : groups) {
    if (auto w = search.run(store, states)) return w;
  }
  return std::nullopt;
}

std::vector<GroundLetter> ground_letters(const SymbolicAutomaton& a, const Policy& p) {
  std::vector<GroundLetter> out;
  for (const auto& s : p.subjects()) {
    for (const auto& t : a.tasks()) {
      for (const auto& o : p.owners()) out.push_back({s, t, o});
    }
  }
  return out;
}

GroundAutomaton ground(const SymbolicAutomaton& a, const Policy& p, std::size_t cap) {
  GroundAutomaton g;
  g.letters_ = ground_letters(a, p);
  std::map<Configuration, std::size_t> index;
  auto id_of = [&](const Configuration& c) {
    auto [it, inserted] = index.emplace(c, g.configs_.size());
    if (inserted) {
      if (g.configs_.size() >= cap) throw GroundingCapExceeded(cap);
      g.configs_.push_back(c);
    }
    return it->second;
  };
  id_of(Configuration{a.initial(), {}});
  for (std::size_t s = 0; s < g.configs_.size(); ++s) {
    for (const auto& l : g.letters_) {
      const Request r{"", l.subject, l.task, l.owner, a.purpose()};
      std::vector<std::size_t> succ;
      for (const auto& c : step_configs(a, p, {g.configs_[s]}, r)) succ.push_back(id_of(c));
      std::sort(succ.begin(), succ.end());
      g.next_.push_back(std::move(succ));
    }
  }
  for (const auto& c : g.configs_) g.accepting_.push_back(a.accepting(c.state) ? 1 : 0);
  g.purpose_ = a.purpose();
  return g;
}

std::optional<std::size_t> GroundAutomaton::letter_of(const Request& r) const {
  return find_letter(letters_, purpose_, r);
}

bool GroundAutomaton::accepts(const std::vector<Request>& trace) const {
  std::vector<std::size_t> cur{0};
  for (const auto& r : trace) {
    auto l = letter_of(r);
    if (!l) return false;
    std::vector<std::size_t> nxt;
    for (auto s : cur) {
      const auto& n = next(s, *l);
      nxt.insert(nxt.end(), n.begin(), n.end());
    }
    std::sort(nxt.begin(), nxt.end());
    nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
    cur = std::move(nxt);
  }
  return std::any_of(cur.begin(), cur.end(), [&](std::size_t s) { return accepting(s); });
}

Dfa determinize(const GroundAutomaton& g, std::size_t cap) {
  Dfa d;
  d.letters_ = g.letters();
  d.purpose_ = g.purpose();
  const std::size_t L = d.letters_.size();
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<std::vector<std::size_t>> subsets;
  auto id_of = [&](std::vector<std::size_t> set) {
    auto [it, inserted] = index.emplace(set, subsets.size());
    if (inserted) {
      if (subsets.size() >= cap) throw GroundingCapExceeded(cap);
      subsets.push_back(std::move(set));
    }
    return it->second;
  };
  id_of({0});
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    for (std::size_t l = 0; l < L; ++l) {
      std::vector<std::size_t> nxt;
      for (auto q : subsets[s]) {
        const auto& n = g.next(q, l);
        nxt.insert(nxt.end(), n.begin(), n.end());
      }
      std::sort(nxt.begin(), nxt.end());
      nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
      d.next_.push_back(id_of(std::move(nxt)));
    }
  }
  for (const auto& set : subsets) {
    d.accepting_.push_back(std::any_of(set.begin(), set.end(), [&](std::size_t q) { return g.accepting(q); }) ? 1
                                                                                                              : 0);
  }
  return d;
}

Dfa complement(Dfa d) {
  for (auto& a : d.accepting_) a = a ? 0 : 1;
  return d;
}

std::optional<std::size_t> Dfa::letter_of(const Request& r) const { return find_letter(letters_, purpose_, r); }

bool Dfa::accepts(const std::vector<Request>& trace) const {
  std::size_t s = 0;
  for (const auto& r : trace) {
    auto l = letter_of(r);
    if (!l) throw Error("request '" + format_request(r) + "' is outside the grounded alphabet");
    s = next(s, *l);
  }
  return accepting(s);
}

Dfa ground_and_complement(const SymbolicAutomaton& a, const Policy& p, std::size_t cap) {
  return complement(determinize(ground(a, p, cap), cap));
}

bool falsifiable(const SymbolicAutomaton& a, const Policy& p, const ConfigSet& cfgs, std::size_t cap) {
  const auto letters = ground_letters(a, p);
  std::set<ConfigSet> seen{cfgs};
  std::deque<const ConfigSet*> queue{&*seen.begin()};
  std::size_t stored = cfgs.size();
  if (stored > cap) throw GroundingCapExceeded(cap);
  while (!queue.empty()) {
    const ConfigSet& cur = *queue.front();
    queue.pop_front();
    for (const auto& l : letters) {
      const Request r{"", l.subject, l.task, l.owner, a.purpose()};
      ConfigSet nxt = step_configs(a, p, cur, r);
      if (!any_accepting(a, nxt)) return true;
      const std::size_t n = nxt.size();
      auto [it, inserted] = seen.insert(std::move(nxt));
      if (inserted) {
        stored += n;
        if (stored > cap) throw GroundingCapExceeded(cap);
        queue.push_back(&*it);
      }
    }
  }
  return false;
}

}  // namespace pamon
