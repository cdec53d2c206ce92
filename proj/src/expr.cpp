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

#include "gfb/expr.hpp"

#include <algorithm>
#include <set>

#include "gfb/error.hpp"
#include "gfb/modular.hpp"

namespace gfb {

struct Expr::Node {
  ExprKind kind;
  int index = -1;  // Var
  int eq_value = 0;
  Value value;
  std::vector<Expr> children;
};

Expr Expr::var(int index) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Var;
  n->index = index;
  return Expr(std::move(n));
}

Expr Expr::constant(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Const;
  n->value = std::move(v);
  return Expr(std::move(n));
}

Expr Expr::eq(int index, int value) { return eq(var(index), value); }

Expr Expr::eq(Expr child, int value) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Eq;
  n->eq_value = value;
  n->children.push_back(std::move(child));
  return Expr(std::move(n));
}

Expr Expr::lnot(Expr child) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Not;
  n->children.push_back(std::move(child));
  return Expr(std::move(n));
}

Expr Expr::neg(Expr child) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Neg;
  n->children.push_back(std::move(child));
  return Expr(std::move(n));
}

Expr Expr::nary(ExprKind kind, std::vector<Expr> children) {
  if (!is_nary(kind)) throw DomainError("nary() needs an n-ary node kind");
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  return Expr(std::move(n));
}

ExprKind Expr::kind() const { return node_->kind; }
int Expr::var() const { return node_->index; }
int Expr::eq_value() const { return node_->eq_value; }
const Value& Expr::value() const { return node_->value; }
std::span<const Expr> Expr::children() const { return node_->children; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ExprKind::Var: return a.var() == b.var();
    case ExprKind::Eq:
      if (a.eq_value() != b.eq_value()) return false;
      break;
    case ExprKind::Const: return a.value() == b.value();
    default: break;
  }
  auto ca = a.children();
  auto cb = b.children();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

ExprKind monoid_kind(MonoidOp op) {
  switch (op) {
    case MonoidOp::And: return ExprKind::And;
    case MonoidOp::Or: return ExprKind::Or;
    case MonoidOp::Xor: return ExprKind::Xor;
    case MonoidOp::Min: return ExprKind::Min;
    case MonoidOp::Max: return ExprKind::Max;
    case MonoidOp::Plus: return ExprKind::Add;
    case MonoidOp::Times: return ExprKind::Mul;
  }
  return ExprKind::Add;
}

Expr combine_expr(const Monoid& m, std::vector<Expr> operands) {
  if (operands.empty()) return Expr::constant(m.neutral());
  if (operands.size() == 1) return operands.front();
  return Expr::nary(monoid_kind(m.op()), std::move(operands));
}

namespace {

void collect_support(const Expr& e, std::set<int>& out) {
  if (e.kind() == ExprKind::Var) {
    out.insert(e.var());
    return;
  }
  for (const auto& c : e.children()) collect_support(c, out);
}

Expr rebuild(const Expr& e, std::vector<Expr> children) {
  switch (e.kind()) {
    case ExprKind::Not: return Expr::lnot(std::move(children[0]));
    case ExprKind::Neg: return Expr::neg(std::move(children[0]));
    case ExprKind::Eq: return Expr::eq(std::move(children[0]), e.eq_value());
    default: return Expr::nary(e.kind(), std::move(children));
  }
}

}  // namespace

std::vector<int> support(const Expr& e) {
  std::set<int> s;
  collect_support(e, s);
  return {s.begin(), s.end()};
}

bool mentions(const Expr& e, int var) {
  if (e.kind() == ExprKind::Var) return e.var() == var;
  for (const auto& c : e.children())
    if (mentions(c, var)) return true;
  return false;
}

Expr substitute(const Expr& e, int x, const Expr& r) {
  return substitute_all(e, {{x, r}});
}

Expr substitute_all(const Expr& e, const std::map<int, Expr>& replacements) {
  switch (e.kind()) {
    case ExprKind::Var: {
      auto it = replacements.find(e.var());
      return it == replacements.end() ? e : it->second;
    }
    case ExprKind::Const:
      return e;
    default: {
      std::vector<Expr> kids;
      kids.reserve(e.children().size());
      for (const auto& c : e.children()) kids.push_back(substitute_all(c, replacements));
      return rebuild(e, std::move(kids));
    }
  }
}

Value evaluate(const Expr& e, std::span<const Value> state, const Domain& domain) {
  switch (e.kind()) {
    case ExprKind::Var:
      if (e.var() < 0 || static_cast<std::size_t>(e.var()) >= state.size())
        throw DomainError("unassigned variable index " + std::to_string(e.var()));
      return state[e.var()];
    case ExprKind::Const:
      return e.value();
    case ExprKind::Eq:
      return Value::finite(evaluate(e.children()[0], state, domain).as_int() == e.eq_value() ? 1 : 0);
    case ExprKind::Not:
      if (!domain.is_finite()) throw DomainError("negation on a rational domain");
      return Value::finite(domain.max() - evaluate(e.children()[0], state, domain).as_int());
    case ExprKind::Neg:
      if (domain.is_finite()) throw DomainError("arithmetic negation on a finite domain");
      return Value(Rational(-evaluate(e.children()[0], state, domain).as_rational()));
    default:
      break;
  }
  if (domain.is_finite()) {
    if (e.kind() == ExprKind::Add || e.kind() == ExprKind::Mul)
      throw DomainError("arithmetic on a finite domain");
    if ((e.kind() == ExprKind::And || e.kind() == ExprKind::Or || e.kind() == ExprKind::Xor) &&
        !domain.is_boolean())
      throw DomainError("Boolean connective on a multi-valued domain");
    MonoidOp op = e.kind() == ExprKind::And   ? MonoidOp::And
                  : e.kind() == ExprKind::Or  ? MonoidOp::Or
                  : e.kind() == ExprKind::Xor ? MonoidOp::Xor
                  : e.kind() == ExprKind::Min ? MonoidOp::Min
                                              : MonoidOp::Max;
    Monoid m(op, domain);
    int acc = m.neutral_int();
    for (const auto& c : e.children()) acc = combine_int(op, acc, evaluate(c, state, domain).as_int());
    return Value::finite(acc);
  }
  if (e.kind() != ExprKind::Add && e.kind() != ExprKind::Mul)
    throw DomainError("finite-range connective on a rational domain");
  Rational acc = e.kind() == ExprKind::Add ? 0 : 1;
  for (const auto& c : e.children()) {
    if (e.kind() == ExprKind::Add)
      acc += evaluate(c, state, domain).as_rational();
    else
      acc *= evaluate(c, state, domain).as_rational();
  }
  return Value(acc);
}

int evaluate_finite(const Expr& e, std::span<const int> state, int max) {
  switch (e.kind()) {
    case ExprKind::Var: return state[e.var()];
    case ExprKind::Const: return e.value().as_int();
    case ExprKind::Eq: return evaluate_finite(e.children()[0], state, max) == e.eq_value() ? 1 : 0;
    case ExprKind::Not: return max - evaluate_finite(e.children()[0], state, max);
    case ExprKind::And: {
      int acc = 1;
      for (const auto& c : e.children()) acc &= evaluate_finite(c, state, max);
      return acc;
    }
    case ExprKind::Or: {
      int acc = 0;
      for (const auto& c : e.children()) acc |= evaluate_finite(c, state, max);
      return acc;
    }
    case ExprKind::Xor: {
      int acc = 0;
      for (const auto& c : e.children()) acc ^= evaluate_finite(c, state, max);
      return acc;
    }
    case ExprKind::Min: {
      int acc = max;
      for (const auto& c : e.children()) acc = std::min(acc, evaluate_finite(c, state, max));
      return acc;
    }
    case ExprKind::Max: {
      int acc = 0;
      for (const auto& c : e.children()) acc = std::max(acc, evaluate_finite(c, state, max));
      return acc;
    }
    default:
      throw DomainError("arithmetic node in a finite-range evaluation");
  }
}

double evaluate_double(const Expr& e, std::span<const double> state) {
  switch (e.kind()) {
    case ExprKind::Var: return state[e.var()];
    case ExprKind::Const: return e.value().is_finite() ? e.value().as_int() : e.value().as_rational().get_d();
    case ExprKind::Neg: return -evaluate_double(e.children()[0], state);
    case ExprKind::Add: {
      double acc = 0;
      for (const auto& c : e.children()) acc += evaluate_double(c, state);
      return acc;
    }
    case ExprKind::Mul: {
      double acc = 1;
      for (const auto& c : e.children()) acc *= evaluate_double(c, state);
      return acc;
    }
    default:
      throw DomainError("non-arithmetic node in a floating-point evaluation");
  }
}

std::uint64_t eval_mod(const Expr& e, std::span<const std::uint64_t> point, std::uint64_t prime) {
  switch (e.kind()) {
    case ExprKind::Var: return point[e.var()] % prime;
    case ExprKind::Const: return modular::from_rational(e.value().as_rational(), prime);
    case ExprKind::Neg: return modular::neg(eval_mod(e.children()[0], point, prime), prime);
    case ExprKind::Add: {
      std::uint64_t acc = 0;
      for (const auto& c : e.children()) acc = modular::add(acc, eval_mod(c, point, prime), prime);
      return acc;
    }
    case ExprKind::Mul: {
      std::uint64_t acc = 1;
      for (const auto& c : e.children()) {
        acc = modular::mul(acc, eval_mod(c, point, prime), prime);
        if (acc == 0) break;
      }
      return acc;
    }
    default:
      throw DomainError("non-polynomial node in a modular evaluation");
  }
}

int degree_bound(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Var: return 1;
    case ExprKind::Const: return 0;
    case ExprKind::Mul: {
      int d = 0;
      for (const auto& c : e.children()) d += degree_bound(c);
      return d;
    }
    default: {
      int d = 0;
      for (const auto& c : e.children()) d = std::max(d, degree_bound(c));
      return d;
    }
  }
}

void validate(const Expr& e, const Domain& domain, int num_vars) {
  auto fail = [&](const std::string& what) {
    throw DomainError(what + " is not legal on domain " + domain.to_string());
  };
  switch (e.kind()) {
    case ExprKind::Var:
      if (e.var() < 0 || e.var() >= num_vars)
        throw DomainError("variable index " + std::to_string(e.var()) + " is not declared");
      return;
    case ExprKind::Const:
      if (!e.value().in(domain)) fail("constant " + e.value().to_string());
      return;
    case ExprKind::Eq:
      if (!domain.is_finite()) fail("value predicate");
      if (e.eq_value() < 0 || e.eq_value() > domain.max())
        fail("predicate value " + std::to_string(e.eq_value()));
      break;
    case ExprKind::Not:
    case ExprKind::Min:
    case ExprKind::Max:
      if (!domain.is_finite()) fail("min/max/negation");
      break;
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Xor:
      if (!domain.is_boolean()) fail("Boolean connective");
      break;
    case ExprKind::Add:
    case ExprKind::Mul:
    case ExprKind::Neg:
      if (domain.is_finite()) fail("arithmetic");
      break;
  }
  for (const auto& c : e.children()) validate(c, domain, num_vars);
}

// ---------------------------------------------------------------------------
// formatting

namespace {

int precedence(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Or:
    case ExprKind::Max:
    case ExprKind::Add:
      return 1;
    case ExprKind::Xor:
      return 2;
    case ExprKind::And:
    case ExprKind::Min:
    case ExprKind::Mul:
      return 3;
    case ExprKind::Not:
    case ExprKind::Neg:
      return 4;
    case ExprKind::Const:
      if (!e.value().is_finite() && (e.value().as_rational() < 0 || e.value().as_rational().get_den() != 1))
        return 3;  // "-1/2" and "1/2" bind like products
      return 5;
    default:
      return 5;
  }
}

std::string var_name(int index, std::span<const std::string> names) {
  if (index >= 0 && static_cast<std::size_t>(index) < names.size()) return names[index];
  return "v" + std::to_string(index);
}

void print(const Expr& e, std::span<const std::string> names, std::string& out);

void print_child(const Expr& c, int parent_prec, std::span<const std::string> names, std::string& out) {
  if (precedence(c) <= parent_prec) {
    out += '(';
    print(c, names, out);
    out += ')';
  } else {
    print(c, names, out);
  }
}

void print(const Expr& e, std::span<const std::string> names, std::string& out) {
  switch (e.kind()) {
    case ExprKind::Var: out += var_name(e.var(), names); return;
    case ExprKind::Eq:
      print_child(e.children()[0], 4, names, out);
      out += ":" + std::to_string(e.eq_value());
      return;
    case ExprKind::Const: out += e.value().to_string(); return;
    case ExprKind::Not:
      out += '!';
      print_child(e.children()[0], 4, names, out);
      return;
    case ExprKind::Neg:
      out += '-';
      print_child(e.children()[0], 4, names, out);
      return;
    default: break;
  }
  auto kids = e.children();
  if (kids.empty()) {
    // empty n-ary: print its neutral element
    switch (e.kind()) {
      case ExprKind::And:
      case ExprKind::Mul: out += '1'; return;
      case ExprKind::Min: out += "min()"; return;
      default: out += '0'; return;
    }
  }
  const char* sep = " ? ";
  switch (e.kind()) {
    case ExprKind::And:
    case ExprKind::Min: sep = " & "; break;
    case ExprKind::Or:
    case ExprKind::Max: sep = " | "; break;
    case ExprKind::Xor: sep = " ^ "; break;
    case ExprKind::Add: sep = " + "; break;
    case ExprKind::Mul: sep = "*"; break;
    default: break;
  }
  int prec = precedence(e);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    const Expr& c = kids[i];
    if (e.kind() == ExprKind::Add && i > 0) {
      if (c.kind() == ExprKind::Neg) {
        out += " - ";
        print_child(c.children()[0], 1, names, out);
        continue;
      }
      if (c.is_const() && !c.value().is_finite() && c.value().as_rational() < 0) {
        out += " - ";
        out += Rational(-c.value().as_rational()).get_str();
        continue;
      }
      if (c.kind() == ExprKind::Mul && !c.children().empty() && c.children()[0].is_const() &&
          !c.children()[0].value().is_finite() && c.children()[0].value().as_rational() < 0) {
        // "a - 2*b" instead of "a + -2*b"
        std::vector<Expr> factors(c.children().begin(), c.children().end());
        Rational mag = -factors[0].value().as_rational();
        if (mag == 1) {
          factors.erase(factors.begin());
        } else {
          factors[0] = Expr::constant(Value(mag));
        }
        out += " - ";
        print_child(factors.size() == 1 ? factors[0] : Expr::nary(ExprKind::Mul, std::move(factors)), 1, names, out);
        continue;
      }
    }
    if (i > 0) out += sep;
    // the left operand of a product may be a bare "-2" or "1/2"
    if (e.kind() == ExprKind::Mul && i == 0 && c.is_const()) {
      out += c.value().to_string();
      continue;
    }
    print_child(c, prec, names, out);
  }
}

}  // namespace

std::string format(const Expr& e, std::span<const std::string> names) {
  std::string out;
  print(e, names, out);
  return out;
}

}  // namespace gfb
