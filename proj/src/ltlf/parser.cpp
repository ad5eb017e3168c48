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

#include "pamon/ltlf/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace pamon::ltlf {

namespace {

std::string describe(std::size_t line, std::size_t column, const std::string& found,
                     const std::set<std::string>& expected, const std::string& detail) {
  std::ostringstream os;
  os << line << ':' << column << ": ";
  if (!detail.empty()) {
    os << detail;
  } else {
    os << "unexpected " << found;
  }
  if (!expected.empty()) {
    os << "; expected one of:";
    for (const auto& e : expected) os << ' ' << e;
  }
  return os.str();
}

enum class Tok { Ident, True, False, Not, Next, Glob, Ev, Until, Weak, And, Or, Implies, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

const std::set<std::string> kPrimaryStart = {"identifier", "true", "false", "(", "!", "X", "G", "F"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t l = line_, c = col_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "end of input", l, c});
        return out;
      }
      const char ch = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string word;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          word.push_back(text_[pos_]);
          advance();
        }
        out.push_back({keyword(word), word, l, c});
        continue;
      }
      switch (ch) {
        case '(':
          advance();
          out.push_back({Tok::LParen, "(", l, c});
          continue;
        case ')':
          advance();
          out.push_back({Tok::RParen, ")", l, c});
          continue;
        case '!':
          advance();
          out.push_back({Tok::Not, "!", l, c});
          continue;
        case '&':
          if (peek(1) == '&') unknown_operator("&&", l, c);
          advance();
          out.push_back({Tok::And, "&", l, c});
          continue;
        case '|':
          if (peek(1) == '|') unknown_operator("||", l, c);
          advance();
          out.push_back({Tok::Or, "|", l, c});
          continue;
        case '-':
          if (peek(1) == '>') {
            advance();
            advance();
            out.push_back({Tok::Implies, "->", l, c});
            continue;
          }
          unknown_operator("-", l, c);
          break;
        default:
          break;
      }
      std::string op(1, ch);
      // Group runs of punctuation so `<->` or `=>` are reported whole.
      std::size_t k = pos_ + 1;
      while (k < text_.size() && std::ispunct(static_cast<unsigned char>(text_[k])) &&
             text_[k] != '(' && text_[k] != ')' && text_[k] != '!' && text_[k] != '#' &&
             text_[k] != '_') {
        op.push_back(text_[k]);
        ++k;
      }
      unknown_operator(op, l, c);
    }
  }

 private:
  static Tok keyword(const std::string& w) {
    if (w == "true") return Tok::True;
    if (w == "false") return Tok::False;
    if (w == "X") return Tok::Next;
    if (w == "G") return Tok::Glob;
    if (w == "F") return Tok::Ev;
    if (w == "U") return Tok::Until;
    if (w == "W") return Tok::Weak;
    return Tok::Ident;
  }

  [[noreturn]] void unknown_operator(const std::string& op, std::size_t l, std::size_t c) {
    throw ParseError(l, c, "'" + op + "'", {}, "unknown operator '" + op + "'");
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = implication();
    if (cur().kind != Tok::End) fail({"&", "|", "->", "U", "W", "end of input"});
    return f;
  }

 private:
  const Token& cur() const { return toks_[i_]; }

  [[noreturn]] void fail(std::set<std::string> expected) {
    const Token& t = cur();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, found, std::move(expected));
  }

  Formula implication() {
    Formula l = disjunction();
    if (cur().kind == Tok::Implies) {
      ++i_;
      return Formula::implies(l, implication());
    }
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (cur().kind == Tok::Or) {
      ++i_;
      l = Formula::disj(l, conjunction());
    }
    return l;
  }

  Formula conjunction() {
    Formula l = binary_temporal();
    while (cur().kind == Tok::And) {
      ++i_;
      l = Formula::conj(l, binary_temporal());
    }
    return l;
  }

  Formula binary_temporal() {
    Formula l = unary();
    if (cur().kind == Tok::Until) {
      ++i_;
      return Formula::until(l, binary_temporal());
    }
    if (cur().kind == Tok::Weak) {
      ++i_;
      return Formula::weak_until(l, binary_temporal());
    }
    return l;
  }

  Formula unary() {
    switch (cur().kind) {
      case Tok::Not:
        ++i_;
        return Formula::negation(unary());
      case Tok::Next:
        ++i_;
        return Formula::next(unary());
      case Tok::Glob:
        ++i_;
        return Formula::globally(unary());
      case Tok::Ev:
        ++i_;
        return Formula::eventually(unary());
      default:
        return primary();
    }
  }

  Formula primary() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Ident:
        ++i_;
        return Formula::atom(t.text);
      case Tok::True:
        ++i_;
        return Formula::truth();
      case Tok::False:
        ++i_;
        return Formula::falsity();
      case Tok::LParen: {
        ++i_;
        Formula inner = implication();
        if (cur().kind != Tok::RParen) fail({")", "&", "|", "->", "U", "W"});
        ++i_;
        return inner;
      }
      default:
        fail(kPrimaryStart);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string found,
                       std::set<std::string> expected, std::string detail)
    : Error(describe(line, column, found, expected, detail)),
      line_(line),
      column_(column),
      found_(std::move(found)),
      expected_(std::move(expected)) {}

Formula parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

}  // namespace pamon::ltlf
