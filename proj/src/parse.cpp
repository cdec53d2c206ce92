// Copyright 2026 The gfb Authors
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
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "gfb/error.hpp"
#include "gfb/io.hpp"

namespace gfb {

namespace {

enum class Tok { Ident, Number, Symbol, End, Eol };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c, bool dots) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || (dots && c == '.');
}

/// Splits text into tokens. Newlines and ';' become Eol when statement_breaks is set.
std::vector<Token> tokenize(std::string_view text, bool statement_breaks, bool dotted_names, int first_line = 1) {
  std::vector<Token> out;
  int line = first_line;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (c == '\n' || (c == ';' && statement_breaks)) {
      if (statement_breaks) out.push_back({Tok::Eol, std::string(1, c), line, col});
      advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t{Tok::Symbol, "", line, col};
    std::size_t start = i;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j], dotted_names)) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(text.substr(start, j - start));
      advance(j - start);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' && std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        ++j;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      }
      t.kind = Tok::Number;
      t.text = std::string(text.substr(start, j - start));
      advance(j - start);
    } else if (c == '.' && i + 1 < text.size() && text[i + 1] == '.') {
      t.text = "..";
      advance(2);
    } else if (std::string_view("&|!^(),:+-*/=;").find(c) != std::string_view::npos) {
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

/// Cursor over a token vector shared by the expression parsers.
class Cursor {
 public:
  Cursor(const std::vector<Token>& toks, std::size_t pos, std::size_t end) : toks_(toks), pos_(pos), end_(end) {}

  const Token& peek() const { return pos_ < end_ ? toks_[pos_] : toks_[end_]; }
  bool at_end() const { return pos_ >= end_; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < end_) ++pos_;
    return t;
  }
  bool accept(std::string_view sym) {
    if (!at_end() && peek().kind == Tok::Symbol && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = at_end() ? "end of expression" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t end_;
};

int to_int(const Token& t) {
  if (t.kind != Tok::Number || t.text.find('.') != std::string::npos)
    throw ParseError("expected an integer, got '" + t.text + "'", t.line, t.col);
  try {
    return std::stoi(t.text);
  } catch (const std::out_of_range&) {
    throw ParseError("integer out of range", t.line, t.col);
  }
}

Rational to_rational(const Token& t) {
  auto dot = t.text.find('.');
  // base 10 explicitly: GMP would read a leading zero as octal
  if (dot == std::string::npos) return Rational(t.text, 10);
  std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
  std::string den = "1" + std::string(t.text.size() - dot - 1, '0');
  Rational q(digits + "/" + den, 10);
  q.canonicalize();
  return q;
}

using Resolver = std::function<int(const Token&)>;

// --- Boolean expressions (.bnet) -------------------------------------------

class BoolParser {
 public:
  BoolParser(Cursor& cur, Resolver resolve) : cur_(cur), resolve_(std::move(resolve)) {}

  Expr parse() {
    Expr e = disj();
    if (!cur_.at_end()) cur_.fail("unexpected token");
    return e;
  }

 private:
  Expr disj() {
    std::vector<Expr> parts{conj()};
    while (cur_.accept("|")) parts.push_back(conj());
    return parts.size() == 1 ? parts.front() : Expr::nary(ExprKind::Or, std::move(parts));
  }
  Expr conj() {
    std::vector<Expr> parts{unary()};
    while (cur_.accept("&")) parts.push_back(unary());
    return parts.size() == 1 ? parts.front() : Expr::nary(ExprKind::And, std::move(parts));
  }
  Expr unary() {
    if (cur_.accept("!")) return Expr::lnot(unary());
    if (cur_.accept("(")) {
      Expr e = disj();
      cur_.expect(")");
      return e;
    }
    const Token& t = cur_.peek();
    if (t.kind == Tok::Number && (t.text == "0" || t.text == "1")) {
      cur_.next();
      return Expr::constant(t.text == "1" ? 1 : 0);
    }
    if (t.kind == Tok::Ident) {
      cur_.next();
      return Expr::var(resolve_(t));
    }
    cur_.fail("expected a variable, constant or '('");
  }

  Cursor& cur_;
  Resolver resolve_;
};

// --- .mdl expressions ------------------------------------------------------

class ModelExprParser {
 public:
  ModelExprParser(Cursor& cur, const DynSystem& sys, Resolver resolve)
      : cur_(cur), sys_(sys), resolve_(std::move(resolve)) {}

  Expr parse() {
    Expr e = sys_.domain.is_finite() ? fin_or() : sum();
    if (!cur_.at_end()) cur_.fail("unexpected token");
    return e;
  }

 private:
  bool mv() const { return !sys_.domain.is_boolean(); }

  // finite grammar
  Expr fin_or() {
    std::vector<Expr> parts{fin_xor()};
    while (cur_.accept("|")) parts.push_back(fin_xor());
    return join(mv() ? ExprKind::Max : ExprKind::Or, std::move(parts));
  }
  Expr fin_xor() {
    const Token& at = cur_.peek();
    std::vector<Expr> parts{fin_and()};
    while (cur_.accept("^")) {
      if (mv()) throw ParseError("'^' is only defined on Boolean models", at.line, at.col);
      parts.push_back(fin_and());
    }
    return join(ExprKind::Xor, std::move(parts));
  }
  Expr fin_and() {
    std::vector<Expr> parts{fin_unary()};
    while (cur_.accept("&")) parts.push_back(fin_unary());
    return join(mv() ? ExprKind::Min : ExprKind::And, std::move(parts));
  }
  Expr fin_unary() {
    if (cur_.accept("!")) return Expr::lnot(fin_unary());
    const Token& t = cur_.peek();
    if (t.kind == Tok::Symbol && std::string_view("+-*/").find(t.text) != std::string_view::npos)
      throw ParseError("polynomial operator '" + t.text + "' in a finite-domain model", t.line, t.col);
    if (cur_.accept("(")) {
      Expr e = fin_or();
      cur_.expect(")");
      return after_primary(e);
    }
    if (t.kind == Tok::Number) {
      cur_.next();
      if (t.text.find('.') != std::string::npos)
        throw ParseError("decimal constant in a finite-domain model", t.line, t.col);
      int v = to_int(t);
      if (v > sys_.domain.max())
        throw ParseError("constant " + t.text + " outside domain " + sys_.domain.to_string(), t.line, t.col);
      return after_primary(Expr::constant(v));
    }
    if (t.kind == Tok::Ident) {
      cur_.next();
      if ((t.text == "min" || t.text == "max") && cur_.accept("(")) {
        std::vector<Expr> args{fin_or()};
        while (cur_.accept(",")) args.push_back(fin_or());
        cur_.expect(")");
        ExprKind k = t.text == "min" ? (mv() ? ExprKind::Min : ExprKind::And) : (mv() ? ExprKind::Max : ExprKind::Or);
        return after_primary(join(k, std::move(args)));
      }
      int idx = resolve_(t);
      if (cur_.accept(":")) {
        const Token& vt = cur_.next();
        int v = to_int(vt);
        if (v > sys_.range_of(idx))
          throw ParseError("value " + vt.text + " outside the range of '" + t.text + "'", vt.line, vt.col);
        return Expr::eq(idx, v);
      }
      return Expr::var(idx);
    }
    cur_.fail("expected a variable, constant or '('");
  }
  Expr after_primary(Expr e) {
    const Token& t = cur_.peek();
    if (cur_.accept(":")) {
      const Token& vt = cur_.next();
      int v = to_int(vt);
      if (v > sys_.domain.max()) throw ParseError("value " + vt.text + " outside the domain", vt.line, vt.col);
      (void)t;
      return Expr::eq(std::move(e), v);
    }
    return e;
  }
  static Expr join(ExprKind k, std::vector<Expr> parts) {
    return parts.size() == 1 ? parts.front() : Expr::nary(k, std::move(parts));
  }

  // rational grammar
  Expr sum() {
    std::vector<Expr> parts{term()};
    for (;;) {
      if (cur_.accept("+")) {
        parts.push_back(term());
      } else if (cur_.accept("-")) {
        parts.push_back(Expr::neg(term()));
      } else {
        break;
      }
    }
    return join(ExprKind::Add, std::move(parts));
  }
  Expr term() {
    std::vector<Expr> parts{factor()};
    for (;;) {
      if (cur_.accept("*")) {
        parts.push_back(factor());
      } else if (cur_.peek().kind == Tok::Symbol && cur_.peek().text == "/") {
        const Token& slash = cur_.next();
        Expr d = factor();
        std::optional<Rational> q = constant_value(d);
        if (!q) throw ParseError("division is only allowed by a constant", slash.line, slash.col);
        if (*q == 0) throw ParseError("division by zero", slash.line, slash.col);
        parts.push_back(Expr::constant(Value(Rational(1 / *q))));
      } else {
        break;
      }
    }
    return join(ExprKind::Mul, std::move(parts));
  }
  static std::optional<Rational> constant_value(const Expr& e) {
    if (e.is_const()) return e.value().as_rational();
    if (e.kind() == ExprKind::Neg) {
      auto inner = constant_value(e.children()[0]);
      if (inner) return Rational(-*inner);
    }
    return std::nullopt;
  }
  Expr factor() {
    if (cur_.accept("-")) return Expr::neg(factor());
    if (cur_.accept("+")) return factor();
    Expr base = rat_primary();
    if (cur_.peek().kind == Tok::Symbol && cur_.peek().text == "^") {
      cur_.next();
      const Token& et = cur_.next();
      int n = to_int(et);
      if (n == 0) return Expr::rational(1);
      if (n > 64) throw ParseError("exponent too large", et.line, et.col);
      return Expr::nary(ExprKind::Mul, std::vector<Expr>(n, base));
    }
    return base;
  }
  Expr rat_primary() {
    const Token& t = cur_.peek();
    if (t.kind == Tok::Symbol && (t.text == "&" || t.text == "|" || t.text == "!" || t.text == ":"))
      throw ParseError("logical operator '" + t.text + "' in a rational model", t.line, t.col);
    if (cur_.accept("(")) {
      Expr e = sum();
      cur_.expect(")");
      return e;
    }
    if (t.kind == Tok::Number) {
      cur_.next();
      return Expr::constant(Value(to_rational(t)));
    }
    if (t.kind == Tok::Ident) {
      cur_.next();
      return Expr::var(resolve_(t));
    }
    cur_.fail("expected a variable, number or '('");
  }

  Cursor& cur_;
  const DynSystem& sys_;
  Resolver resolve_;
};

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

DynSystem parse_bnet(std::string_view text, std::string name) {
  struct Line {
    std::string target;
    std::string_view body;
    int line;
    int body_col;
  };
  std::vector<Line> lines;
  DynSystem sys;
  sys.name = std::move(name);
  sys.domain = Domain::boolean();

  int lineno = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    std::string_view content = raw.substr(0, raw.find('#'));
    if (trim(content).empty()) continue;
    std::size_t comma = content.find(',');
    if (comma == std::string_view::npos) throw ParseError("expected 'name, expression'", lineno, 1);
    std::string target = trim(content.substr(0, comma));
    if (!header_seen && lines.empty() && lower(target) == "targets") {
      header_seen = true;
      continue;
    }
    if (target.empty() || !ident_start(target[0]) ||
        !std::all_of(target.begin(), target.end(), [](char c) { return ident_char(c, true); }))
      throw ParseError("invalid target name '" + target + "'", lineno, 1);
    if (sys.index_of(target) >= 0) throw ParseError("duplicate target '" + target + "'", lineno, 1);
    sys.vars.push_back(target);
    lines.push_back({target, content.substr(comma + 1), lineno, static_cast<int>(comma) + 2});
  }
  if (sys.vars.empty()) throw ParseError("no targets", lineno, 1);

  Resolver resolve = [&](const Token& t) {
    int idx = sys.index_of(t.text);
    if (idx < 0) throw ParseError("unknown variable '" + t.text + "'", t.line, t.col);
    return idx;
  };
  for (const auto& l : lines) {
    auto toks = tokenize(l.body, false, true, l.line);
    for (auto& t : toks)
      if (t.line == l.line) t.col += l.body_col - 1;
    for (const auto& t : toks)
      if (t.kind == Tok::Symbol && std::string_view("&|!()").find(t.text) == std::string_view::npos)
        throw ParseError("unexpected '" + t.text + "' in Boolean expression", t.line, t.col);
    if (toks.size() == 1) throw ParseError("missing expression for '" + l.target + "'", l.line, l.body_col);
    Cursor cur(toks, 0, toks.size() - 1);
    sys.updates.push_back(BoolParser(cur, resolve).parse());
  }
  sys.validate();
  return sys;
}

DynSystem parse_model(std::string_view text) {
  auto toks = tokenize(text, true, false);

  // statements as [begin, end) token ranges
  std::vector<std::pair<std::size_t, std::size_t>> stmts;
  std::size_t begin = 0;
  for (std::size_t k = 0; k < toks.size(); ++k) {
    if (toks[k].kind == Tok::Eol || toks[k].kind == Tok::End) {
      if (k > begin) stmts.emplace_back(begin, k);
      begin = k + 1;
    }
  }

  DynSystem sys;
  std::optional<Token> domain_tok;
  std::optional<Token> step_tok;
  std::map<std::string, int> declared_range;
  std::vector<std::pair<std::size_t, std::size_t>> equations;
  bool has_update = false;
  bool has_ode = false;
  bool saw_domain = false;

  auto declare = [&](const Token& t) {
    if (t.kind != Tok::Ident) throw ParseError("expected a variable name, got '" + t.text + "'", t.line, t.col);
    if (t.text == "min" || t.text == "max") throw ParseError("'" + t.text + "' is reserved", t.line, t.col);
    if (sys.index_of(t.text) < 0) sys.vars.push_back(t.text);
  };

  // pass 1: declarations, domain and equation heads
  for (auto [b, e] : stmts) {
    const Token& kw = toks[b];
    Cursor cur(toks, b + 1, e);
    if (kw.kind != Tok::Ident) throw ParseError("expected a statement keyword", kw.line, kw.col);
    if (kw.text == "model") {
      const Token& n = cur.next();
      if (n.kind != Tok::Ident) cur.fail("expected a model name");
      sys.name = n.text;
      if (!cur.at_end()) cur.fail("unexpected token after model name");
    } else if (kw.text == "domain") {
      if (saw_domain) throw ParseError("domain declared twice", kw.line, kw.col);
      saw_domain = true;
      domain_tok = kw;
      const Token& a = cur.next();
      if (a.kind == Tok::Ident && (a.text == "Q" || a.text == "rational")) {
        sys.domain = Domain::rational();
      } else if (a.kind == Tok::Ident && (a.text == "bool" || a.text == "boolean" || a.text == "B")) {
        sys.domain = Domain::boolean();
      } else {
        if (to_int(a) != 0) throw ParseError("finite domains start at 0", a.line, a.col);
        cur.expect("..");
        const Token& m = cur.next();
        int max = to_int(m);
        if (max < 1) throw ParseError("domain needs at least two values", m.line, m.col);
        sys.domain = Domain::finite(max);
      }
      if (!cur.at_end()) cur.fail("unexpected token after domain");
    } else if (kw.text == "var") {
      do {
        const Token& n = cur.next();
        declare(n);
        if (cur.peek().kind == Tok::Number && !cur.at_end()) {
          const Token& lo = cur.next();
          if (to_int(lo) != 0) throw ParseError("variable ranges start at 0", lo.line, lo.col);
          cur.expect("..");
          const Token& hi = cur.next();
          declared_range[n.text] = to_int(hi);
        }
      } while (cur.accept(","));
      if (!cur.at_end()) cur.fail("expected ',' between variables");
    } else if (kw.text == "update" || kw.text == "ode") {
      (kw.text == "update" ? has_update : has_ode) = true;
      if (has_update && has_ode) throw ParseError("cannot mix update and ode equations", kw.line, kw.col);
      declare(cur.next());
      cur.expect("=");
      equations.emplace_back(b, e);
    } else if (kw.text == "step") {
      if (step_tok) throw ParseError("step variable declared twice", kw.line, kw.col);
      const Token& n = cur.next();
      if (n.kind != Tok::Ident) cur.fail("expected the step variable name");
      step_tok = n;
      if (!cur.at_end()) cur.fail("unexpected token after step variable");
    } else {
      throw ParseError("unknown statement '" + kw.text + "'", kw.line, kw.col);
    }
  }

  if (sys.vars.empty()) throw ParseError("model declares no variables", toks.back().line, 1);
  if (has_ode) {
    if (!saw_domain) sys.domain = Domain::rational();
    if (sys.domain.is_finite()) throw ParseError("ode equations need domain Q", domain_tok->line, domain_tok->col);
    if (step_tok) throw ParseError("step variables belong to update models", step_tok->line, step_tok->col);
    sys.kind = SystemKind::VectorField;
  }
  if (!declared_range.empty()) {
    if (!sys.domain.is_finite()) throw ParseError("variable ranges need a finite domain", toks.front().line, 1);
    int top = 0;
    for (const auto& [n, r] : declared_range) top = std::max(top, r);
    if (!saw_domain) sys.domain = Domain::finite(top);
    sys.ranges.assign(sys.vars.size(), sys.domain.max());
    for (const auto& [n, r] : declared_range) {
      if (r < 1 || r > sys.domain.max())
        throw ParseError("range of '" + n + "' lies outside domain " + sys.domain.to_string(), 1, 1);
      sys.ranges[sys.index_of(n)] = r;
    }
  }
  if (step_tok) {
    int idx = sys.index_of(step_tok->text);
    if (idx < 0) throw ParseError("unknown step variable '" + step_tok->text + "'", step_tok->line, step_tok->col);
    sys.tau = idx;
    sys.kind = SystemKind::DiscretizedODE;
  }

  // pass 2: equation bodies
  Resolver resolve = [&](const Token& t) {
    int idx = sys.index_of(t.text);
    if (idx < 0) throw ParseError("unknown variable '" + t.text + "'", t.line, t.col);
    return idx;
  };
  std::vector<std::optional<Expr>> bodies(sys.vars.size());
  for (auto [b, e] : equations) {
    const Token& head = toks[b + 1];
    int idx = sys.index_of(head.text);
    if (bodies[idx]) throw ParseError("second equation for '" + head.text + "'", head.line, head.col);
    Cursor cur(toks, b + 3, e);
    if (cur.at_end()) cur.fail("missing right-hand side");
    bodies[idx] = ModelExprParser(cur, sys, resolve).parse();
  }
  for (std::size_t k = 0; k < bodies.size(); ++k) {
    if (!bodies[k]) throw ParseError("variable '" + sys.vars[k] + "' has no equation", toks.back().line, 1);
    sys.updates.push_back(*bodies[k]);
  }
  sys.validate();
  return sys;
}

Partition parse_partition(std::string_view text, const DynSystem& sys) {
  const int n = sys.size();
  std::vector<int> owner(n, -1);
  std::vector<std::vector<int>> blocks;
  enum class Rest { None, Block, Singletons };
  Rest rest = Rest::None;
  bool want_outputs = false;
  bool want_all = false;

  auto where = [&](std::size_t offset) {
    int line = 1;
    int col = 1;
    for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return std::pair{line, col};
  };
  auto fail = [&](const std::string& msg, std::size_t offset) {
    auto [l, c] = where(offset);
    throw ParseError(msg, l, c);
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t stop = text.find_first_of(";|\n", pos);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view chunk = text.substr(pos, stop - pos);
    std::size_t chunk_at = pos;
    pos = stop + 1;
    std::string_view body = chunk.substr(0, chunk.find('#'));
    std::string word = trim(body);
    if (word.empty()) continue;
    std::string key = lower(word);
    key.erase(std::remove_if(key.begin(), key.end(), [](unsigned char c) { return std::isspace(c); }), key.end());
    if (key == "singletons") key = "singletons(rest)";
    if (key == "rest" || key == "singletons(rest)") {
      if (rest != Rest::None) fail("'rest' given twice", chunk_at);
      rest = key == "rest" ? Rest::Block : Rest::Singletons;
      continue;
    }
    if (key == "outputs") {
      want_outputs = true;
      continue;
    }
    if (key == "all") {
      want_all = true;
      continue;
    }
    std::vector<int> block;
    std::size_t item = 0;
    while (item <= body.size()) {
      std::size_t comma = body.find(',', item);
      if (comma == std::string_view::npos) comma = body.size();
      std::string name = trim(body.substr(item, comma - item));
      std::size_t name_at = chunk_at + item + body.substr(item).find_first_not_of(" \t");
      item = comma + 1;
      if (name.empty()) fail("empty block member", name_at);
      int idx = sys.index_of(name);
      if (idx < 0) fail("unknown variable '" + name + "'", name_at);
      if (owner[idx] != -1 || std::find(block.begin(), block.end(), idx) != block.end())
        fail("variable '" + name + "' listed twice", name_at);
      block.push_back(idx);
    }
    for (int v : block) owner[v] = static_cast<int>(blocks.size());
    blocks.push_back(std::move(block));
  }

  auto claim = [&](const std::vector<int>& vars, const char* what) {
    std::vector<int> block;
    for (int v : vars) {
      if (owner[v] != -1) throw ParseError(std::string("'") + what + "' overlaps an explicit block at '" + sys.vars[v] + "'", 1, 1);
      owner[v] = static_cast<int>(blocks.size());
      block.push_back(v);
    }
    if (!block.empty()) blocks.push_back(std::move(block));
  };
  if (want_all) {
    std::vector<int> free;
    for (int v : sys.state_vars())
      if (owner[v] == -1) free.push_back(v);
    claim(free, "all");
  }
  if (want_outputs) {
    std::vector<int> outs;
    for (int v : sys.outputs())
      if (owner[v] == -1) outs.push_back(v);
    claim(outs, "outputs");
  }
  if (sys.tau && owner[*sys.tau] == -1) {
    owner[*sys.tau] = static_cast<int>(blocks.size());
    blocks.push_back({*sys.tau});
  }
  std::vector<int> left;
  for (int v = 0; v < n; ++v)
    if (owner[v] == -1) left.push_back(v);
  if (!left.empty()) {
    if (rest == Rest::None) throw ParseError("partition does not cover '" + sys.vars[left.front()] + "' and has no 'rest'", 1, 1);
    if (rest == Rest::Block) {
      blocks.push_back(left);
    } else {
      for (int v : left) blocks.push_back({v});
    }
  }
  Partition p = Partition::from_blocks(n, std::move(blocks));
  check_partition(sys, p);
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write to '" + path + "' failed");
}

DynSystem load_model(const std::string& path) {
  std::filesystem::path p(path);
  std::string text = read_file(path);
  if (p.extension() == ".bnet") return parse_bnet(text, p.stem().string());
  DynSystem sys = parse_model(text);
  if (sys.name.empty()) sys.name = p.stem().string();
  return sys;
}

}  // namespace gfb
