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

#include <algorithm>
#include <sstream>

#include "pamon/ltlf/parser.hpp"
#include "pamon/policy/policy.hpp"

namespace pamon {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct Statement {
  std::string text;
  std::size_t start_line;  // line where `text` begins
  std::size_t line;        // line of its first non-blank character
};

// Comments are blanked out (not removed) so offsets keep their line numbers.
std::vector<Statement> split_statements(std::string_view text, std::string& tail) {
  std::string clean(text);
  bool comment = false;
  for (char& c : clean) {
    if (c == '\n') comment = false;
    else if (c == '#') comment = true;
    if (comment) c = ' ';
  }
  std::vector<Statement> out;
  std::size_t line = 1, start = 0, start_line = 1;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    if (clean[i] == ';') {
      std::string_view raw(clean.data() + start, i - start);
      auto lead = raw.find_first_not_of(" \t\r\n");
      std::size_t l = start_line;
      if (lead != std::string_view::npos) {
        l += static_cast<std::size_t>(std::count(raw.begin(), raw.begin() + lead, '\n'));
      }
      out.push_back({std::string(raw), start_line, l});
      start = i + 1;
      start_line = line;
    } else if (clean[i] == '\n') {
      ++line;
    }
  }
  tail = clean.substr(start);
  return out;
}

}  // namespace

bool WorkflowSpec::contains(const std::string& task) const {
  return std::find(tasks.begin(), tasks.end(), task) != tasks.end();
}

bool WorkflowSpec::operator==(const WorkflowSpec& o) const {
  return source == o.source && tasks == o.tasks && constraints == o.constraints;
}

WorkflowSpec parse_workflow(std::string_view text, std::string source) {
  WorkflowSpec w;
  w.source = std::move(source);
  std::string tail;
  const auto stmts = split_statements(text, tail);
  if (!trim(tail).empty()) {
    throw PolicyError(w.source, 0, "statement not terminated by ';'");
  }
  bool header = false;
  for (const auto& st : stmts) {
    const std::string_view body = trim(st.text);
    if (body.empty()) continue;
    const auto colon = body.find(':');
    const std::string_view key = trim(body.substr(0, colon));
    if (colon == std::string_view::npos || (key != "tasks" && key != "constraint")) {
      throw PolicyError(w.source, st.line,
                        "expected 'tasks:' or 'constraint:', found '" + std::string(key) + "'");
    }
    const std::string_view rest = body.substr(colon + 1);
    if (key == "tasks") {
      if (header) throw PolicyError(w.source, st.line, "duplicate tasks header");
      header = true;
      std::string item;
      std::istringstream in{std::string(rest)};
      while (std::getline(in, item, ',')) {
        const std::string name(trim(item));
        if (!ltlf::is_identifier(name) || ltlf::is_reserved_word(name)) {
          throw PolicyError(w.source, st.line, "invalid task name '" + name + "'");
        }
        if (w.contains(name)) throw PolicyError(w.source, st.line, "task '" + name + "' listed twice");
        w.tasks.push_back(name);
      }
      if (w.tasks.empty()) throw PolicyError(w.source, st.line, "empty tasks header");
      continue;
    }
    if (!header) throw PolicyError(w.source, st.line, "constraint before tasks header");
    ltlf::Formula f = ltlf::Formula::truth();
    try {
      f = ltlf::parse(rest);
    } catch (const ltlf::ParseError& e) {
      const auto offset = static_cast<std::size_t>(rest.data() - st.text.data());
      const auto before = static_cast<std::size_t>(
          std::count(st.text.begin(), st.text.begin() + static_cast<long>(offset), '\n'));
      throw PolicyError(w.source, st.start_line + before + e.line() - 1, e.what());
    }
    for (const auto& a : ltlf::atoms_of(f)) {
      if (!w.contains(a)) {
        throw PolicyError(w.source, st.line, "constraint references undeclared task '" + a + "'");
      }
    }
    w.constraints.push_back(std::move(f));
  }
  if (!header) throw PolicyError(w.source, 0, "missing tasks header");
  return w;
}

std::string format_workflow(const WorkflowSpec& w) {
  std::ostringstream out;
  out << "tasks: ";
  for (std::size_t i = 0; i < w.tasks.size(); ++i) out << (i ? ", " : "") << w.tasks[i];
  out << ";\n";
  for (const auto& c : w.constraints) out << "constraint: " << ltlf::to_string(c) << ";\n";
  return out.str();
}

}  // namespace pamon
