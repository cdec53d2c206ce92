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

#include "gfb/polynomial.hpp"

#include <algorithm>

#include "gfb/error.hpp"
#include "gfb/modular.hpp"

namespace gfb {

namespace {

int total_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

void check_cap(const Poly& p, std::size_t cap) {
  if (p.size() > cap)
    throw LimitError("polynomial expansion exceeds the term cap of " + std::to_string(cap));
}

}  // namespace

Poly Poly::constant(const Rational& c) {
  Poly p;
  p.add_term({}, c);
  return p;
}

Poly Poly::variable(int index) {
  Poly p;
  p.add_term({{index, 1}}, 1);
  return p;
}

int Poly::exponent(const Monomial& m, int var) {
  for (const auto& [v, e] : m)
    if (v == var) return e;
  return 0;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) {
      terms_.erase(it);
      recompute_degree();
      return;
    }
  }
  degree_ = std::max(degree_, total_degree(m));
}

void Poly::recompute_degree() {
  degree_ = 0;
  for (const auto& [m, c] : terms_) degree_ = std::max(degree_, total_degree(m));
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

std::string Poly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    bool unit = mag == 1 && !m.empty();
    if (!unit) out += mag.get_str();
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (!unit || k > 0) out += "*";
      auto [v, e] = m[k];
      out += v >= 0 && static_cast<std::size_t>(v) < names.size() ? names[v] : "v" + std::to_string(v);
      if (e > 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b.terms()) out.add_term(m, c);
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, -b); }

Poly poly_mul(const Poly& a, const Poly& b, std::size_t term_cap) {
  Poly out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      out.add_term(multiply(ma, mb), ca * cb);
    }
    check_cap(out, term_cap);
  }
  return out;
}

Poly from_expr(const Expr& e, std::size_t term_cap) {
  switch (e.kind()) {
    case ExprKind::Var: return Poly::variable(e.var());
    case ExprKind::Const:
      if (e.value().is_finite()) throw DomainError("finite-range constant in a polynomial");
      return Poly::constant(e.value().as_rational());
    case ExprKind::Neg: return -from_expr(e.children()[0], term_cap);
    case ExprKind::Add: {
      Poly acc;
      for (const auto& c : e.children()) {
        acc = poly_add(acc, from_expr(c, term_cap));
        check_cap(acc, term_cap);
      }
      return acc;
    }
    case ExprKind::Mul: {
      Poly acc = Poly::constant(1);
      for (const auto& c : e.children()) {
        acc = poly_mul(acc, from_expr(c, term_cap), term_cap);
        if (acc.is_zero()) break;
      }
      return acc;
    }
    default:
      throw DomainError("non-polynomial node in polynomial expansion");
  }
}

Poly truncate_tau(const Poly& p, int tau, int order) {
  if (order < 1) throw DomainError("truncation order must be >= 1");
  Poly out;
  for (const auto& [m, c] : p.terms())
    if (Poly::exponent(m, tau) < order) out.add_term(m, c);
  return out;
}

Poly tau_coefficient(const Poly& p, int tau, int k) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    if (Poly::exponent(m, tau) != k) continue;
    Monomial rest;
    for (const auto& ve : m)
      if (ve.first != tau) rest.push_back(ve);
    out.add_term(rest, c);
  }
  return out;
}

std::uint64_t eval_mod(const Poly& p, std::span<const std::uint64_t> point, std::uint64_t prime) {
  std::uint64_t acc = 0;
  for (const auto& [m, c] : p.terms()) {
    std::uint64_t term = modular::from_rational(c, prime);
    for (const auto& [v, e] : m) term = modular::mul(term, modular::pow(point[v], e, prime), prime);
    acc = modular::add(acc, term, prime);
  }
  return acc;
}

Rational evaluate(const Poly& p, std::span<const Rational> point) {
  Rational acc = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (const auto& [v, e] : m)
      for (int k = 0; k < e; ++k) term *= point[v];
    acc += term;
  }
  return acc;
}

Poly compose(const Poly& p, const std::map<int, Poly>& images, std::size_t term_cap) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly term = Poly::constant(c);
    Monomial kept;
    for (const auto& [v, e] : m) {
      auto it = images.find(v);
      if (it == images.end()) {
        kept.emplace_back(v, e);
        continue;
      }
      for (int k = 0; k < e; ++k) term = poly_mul(term, it->second, term_cap);
    }
    Poly kept_poly;
    kept_poly.add_term(kept, 1);
    out = poly_add(out, poly_mul(term, kept_poly, term_cap));
    check_cap(out, term_cap);
  }
  return out;
}

Expr to_expr(const Poly& p) {
  if (p.is_zero()) return Expr::rational(0);
  std::vector<Expr> sum;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Expr> prod;
    if (c != 1 || m.empty()) prod.push_back(Expr::constant(Value(c)));
    for (const auto& [v, e] : m)
      for (int k = 0; k < e; ++k) prod.push_back(Expr::var(v));
    sum.push_back(prod.size() == 1 ? prod.front() : Expr::nary(ExprKind::Mul, std::move(prod)));
  }
  return sum.size() == 1 ? sum.front() : Expr::nary(ExprKind::Add, std::move(sum));
}

}  // namespace gfb
