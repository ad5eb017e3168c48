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

#include "pamon/compiler/purpose.hpp"

#include <algorithm>
#include <sstream>

#include "pamon/ltlf/automaton.hpp"
#include "pamon/ltlf/semantics.hpp"

namespace pamon {

std::string subject_var(const std::string& task) { return "sub_" + task; }

PurposeFormula build_purpose_formula(const Policy& p, const std::string& purpose) {
  if (!p.has_purpose(purpose)) throw UnknownEntityError("purpose", purpose);
  const WorkflowSpec& w = p.workflow(purpose);
  for (const auto& t : w.tasks) {
    if (!p.has_task(t)) throw Error("workflow of '" + purpose + "' references undeclared task '" + t + "'");
  }
  for (const auto& a : ltlf::atoms_of(w.formula())) {
    if (!w.contains(a)) throw Error("workflow of '" + purpose + "' references undeclared task '" + a + "'");
  }
  PurposeFormula pf{purpose, w.tasks, ltlf::Formula::conj(w.formula(), ltlf::inject_single_task_constraint(w.tasks)),
                    {}, p.sod(purpose), p.bod(purpose)};
  for (const auto& t : w.tasks) pf.task_link[t] = p.uses(t);
  for (const auto& pair : pf.sod_pairs) {
    if (pf.bod_pairs.count(pair)) throw Error("tasks '" + pair.first + "' and '" + pair.second + "' are both sod and bod");
  }
  return pf;
}

std::size_t SymbolicAutomaton::edge_count() const {
  std::size_t n = 0;
  for (const auto& o : out_) n += o.size();
  return n;
}

bool SymbolicAutomaton::accepts_tasks(const std::vector<std::string>& word) const {
  std::vector<std::size_t> cur{initial_};
  for (const auto& t : word) {
    std::vector<std::size_t> next;
    for (auto s : cur) {
      for (const auto& e : out_[s]) {
        if (e.guard.task == t) next.push_back(e.to);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](std::size_t s) { return accepting(s); });
}

SymbolicAutomaton build_pre_automaton(const PurposeFormula& pf) {
  const ltlf::PropAutomaton prop = ltlf::build_automaton(pf.phi, ltlf::Alphabet::singletons(pf.tasks));

  SymbolicAutomaton a;
  a.purpose_ = pf.purpose;
  a.tasks_ = pf.tasks;
  a.initial_ = prop.initial();

  std::set<std::string> constrained;
  for (const auto* rel : {&pf.sod_pairs, &pf.bod_pairs}) {
    for (const auto& pair : *rel) {
      constrained.insert(pair.first);
      constrained.insert(pair.second);
    }
  }
  for (const auto& t : pf.tasks) {
    if (constrained.count(t)) a.across_vars_.push_back(subject_var(t));
  }
  for (const auto& pair : pf.sod_pairs) {
    a.constraints_.push_back({subject_var(pair.first), subject_var(pair.second), Relation::NotEqual});
  }
  for (const auto& pair : pf.bod_pairs) {
    a.constraints_.push_back({subject_var(pair.first), subject_var(pair.second), Relation::Equal});
  }
  std::sort(a.constraints_.begin(), a.constraints_.end());

  const auto& alphabet = prop.alphabet();
  for (std::size_t s = 0; s < prop.size(); ++s) {
    a.accepting_.push_back(prop.accepting(s) ? 1 : 0);
    std::vector<SymEdge> edges;
    for (const auto& e : prop.out(s)) {
      const auto letter = alphabet.decode(e.letter);
      const std::string& task = *letter.begin();
      Guard g{task, std::nullopt, {}};
      if (constrained.count(task)) g.subject = subject_var(task);
      edges.push_back({e.to, std::move(g)});
    }
    a.out_.push_back(std::move(edges));
  }
  return a;
}

SymbolicAutomaton specialize(const SymbolicAutomaton& pre, const Policy& p) {
  SymbolicAutomaton a = pre;
  for (auto& edges : a.out_) {
    for (auto& e : edges) {
      if (!p.has_task(e.guard.task)) throw UnknownEntityError("task", e.guard.task);
      e.guard.checks = p.uses(e.guard.task);
    }
  }
  a.specialized_ = true;
  return a;
}

std::string to_dot(const SymbolicAutomaton& a) {
  std::ostringstream out;
  out << "// purpose " << a.purpose() << " (" << (a.specialized() ? "specialized" : "pre") << ")\n";
  out << "// constraints:";
  if (a.constraints().empty()) out << " none";
  for (std::size_t i = 0; i < a.constraints().size(); ++i) {
    const auto& c = a.constraints()[i];
    out << (i ? ";" : "") << " " << c.lhs << (c.rel == Relation::Equal ? " = " : " != ") << c.rhs;
  }
  out << "\n";
  out << "digraph \"" << a.purpose() << "\" {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < a.size(); ++s) {
    out << "  q" << s << " [shape=" << (a.accepting(s) ? "doublecircle" : "circle");
    if (s == a.initial()) out << ", style=bold";
    out << "];\n";
  }
  for (std::size_t s = 0; s < a.size(); ++s) {
    for (const auto& e : a.out(s)) {
      out << "  q" << s << " -> q" << e.to << " [label=\"" << e.guard.task;
      if (e.guard.subject) out << " [" << *e.guard.subject << "]";
      if (!e.guard.checks.empty()) {
        out << " /";
        bool first = true;
        for (const auto& c : e.guard.checks) {
          out << (first ? " " : ", ") << c.action << " " << c.object;
          first = false;
        }
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace pamon
