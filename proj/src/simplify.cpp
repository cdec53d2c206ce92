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
#include <optional>

#include "gfb/expr.hpp"

namespace gfb {

namespace {

bool contains(const std::vector<Expr>& v, const Expr& e) {
  return std::find(v.begin(), v.end(), e) != v.end();
}

class Simplifier {
 public:
  explicit Simplifier(const Domain& d) : domain_(d) {}

  Expr run(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Var:
      case ExprKind::Const:
        return e;
      case ExprKind::Not: return simplify_not(run(e.children()[0]));
      case ExprKind::Neg: return simplify_neg(run(e.children()[0]));
      case ExprKind::Eq: return simplify_eq(run(e.children()[0]), e.eq_value());
      default: break;
    }
    std::vector<Expr> kids;
    for (const auto& c : e.children()) {
      Expr s = run(c);
      // flatten nested nodes of the same associative kind
      if (s.kind() == e.kind()) {
        for (const auto& g : s.children()) kids.push_back(g);
      } else {
        kids.push_back(std::move(s));
      }
    }
    switch (e.kind()) {
      case ExprKind::And:
      case ExprKind::Min: return simplify_meet(e.kind(), std::move(kids));
      case ExprKind::Or:
      case ExprKind::Max: return simplify_join(e.kind(), std::move(kids));
      case ExprKind::Xor: return simplify_xor(std::move(kids));
      case ExprKind::Add: return simplify_add(std::move(kids));
      case ExprKind::Mul: return simplify_mul(std::move(kids));
      default: return Expr::nary(e.kind(), std::move(kids));
    }
  }

 private:
  int top() const { return domain_.max(); }

  Expr simplify_not(Expr c) {
    if (c.is_const()) return Expr::constant(top() - c.value().as_int());
    if (c.kind() == ExprKind::Not) return c.children()[0];
    return Expr::lnot(std::move(c));
  }

  Expr simplify_neg(Expr c) {
    if (c.is_const()) return Expr::constant(Value(Rational(-c.value().as_rational())));
    if (c.kind() == ExprKind::Neg) return c.children()[0];
    return Expr::neg(std::move(c));
  }

  Expr simplify_eq(Expr c, int v) {
    if (c.is_const()) return Expr::constant(c.value().as_int() == v ? 1 : 0);
    return Expr::eq(std::move(c), v);
  }

  static std::vector<Expr> dedupe(std::vector<Expr> kids) {
    std::vector<Expr> out;
    for (auto& k : kids)
      if (!contains(out, k)) out.push_back(std::move(k));
    return out;
  }

  // x & !x on the Booleans, or x:a together with x:b for a != b
  bool has_contradiction(const std::vector<Expr>& kids) const {
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const Expr& a = kids[i];
      if (domain_.is_boolean() && a.kind() == ExprKind::Not && contains(kids, a.children()[0])) return true;
      if (a.kind() != ExprKind::Eq) continue;
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        const Expr& b = kids[j];
        if (b.kind() == ExprKind::Eq && b.eq_value() != a.eq_value() && b.children()[0] == a.children()[0])
          return true;
      }
    }
    return false;
  }

  // x | !x on the Booleans, or x:0 | ... | x:m covering every value
  bool has_tautology(const std::vector<Expr>& kids) const {
    for (const auto& a : kids) {
      if (domain_.is_boolean() && a.kind() == ExprKind::Not && contains(kids, a.children()[0])) return true;
      if (a.kind() != ExprKind::Eq) continue;
      std::vector<bool> seen(static_cast<std::size_t>(top()) + 1, false);
      for (const auto& b : kids)
        if (b.kind() == ExprKind::Eq && b.children()[0] == a.children()[0] && b.eq_value() <= top())
          seen[b.eq_value()] = true;
      if (std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) return true;
    }
    return false;
  }

  // And / Min: neutral is the top element, 0 absorbs
  Expr simplify_meet(ExprKind kind, std::vector<Expr> kids) {
    int neutral = kind == ExprKind::And ? 1 : top();
    std::vector<Expr> rest;
    int folded = neutral;
    for (auto& k : kids) {
      if (k.is_const()) {
        folded = std::min(folded, k.value().as_int());
      } else {
        rest.push_back(std::move(k));
      }
    }
    if (folded == 0) return Expr::constant(0);
    rest = dedupe(std::move(rest));
    if (has_contradiction(rest)) return Expr::constant(0);
    if (folded != neutral) rest.insert(rest.begin(), Expr::constant(folded));
    if (rest.empty()) return Expr::constant(neutral);
    if (rest.size() == 1) return rest.front();
    return Expr::nary(kind, std::move(rest));
  }

  // Or / Max: neutral 0, the top element absorbs
  Expr simplify_join(ExprKind kind, std::vector<Expr> kids) {
    int absorbing = kind == ExprKind::Or ? 1 : top();
    std::vector<Expr> rest;
    int folded = 0;
    for (auto& k : kids) {
      if (k.is_const()) {
        folded = std::max(folded, k.value().as_int());
      } else {
        rest.push_back(std::move(k));
      }
    }
    if (folded == absorbing) return Expr::constant(absorbing);
    rest = dedupe(std::move(rest));
    // a 0/1-valued predicate disjunction covering every value is 1
    if (has_tautology(rest) && folded <= 1) {
      if (kind == ExprKind::Or) return Expr::constant(1);
      bool all_predicates = std::all_of(rest.begin(), rest.end(), [](const Expr& e) {
        return e.kind() == ExprKind::Eq;
      });
      if (all_predicates) return Expr::constant(1);
    }
    if (folded != 0) rest.insert(rest.begin(), Expr::constant(folded));
    if (rest.empty()) return Expr::constant(0);
    if (rest.size() == 1) return rest.front();
    return Expr::nary(kind, std::move(rest));
  }

  Expr simplify_xor(std::vector<Expr> kids) {
    int parity = 0;
    std::vector<Expr> rest;
    for (auto& k : kids) {
      if (k.is_const()) {
        parity ^= k.value().as_int();
        continue;
      }
      auto it = std::find(rest.begin(), rest.end(), k);
      if (it != rest.end()) {
        rest.erase(it);  // x ^ x = 0
      } else {
        rest.push_back(std::move(k));
      }
    }
    Expr body = rest.empty()       ? Expr::constant(0)
                : rest.size() == 1 ? rest.front()
                                   : Expr::nary(ExprKind::Xor, std::move(rest));
    if (parity == 0) return body;
    return simplify_not(body);
  }

  Expr simplify_add(std::vector<Expr> kids) {
    Rational sum = 0;
    std::vector<Expr> rest;
    for (auto& k : kids) {
      if (k.is_const()) {
        sum += k.value().as_rational();
      } else {
        rest.push_back(std::move(k));
      }
    }
    if (sum != 0) rest.push_back(Expr::constant(Value(sum)));
    if (rest.empty()) return Expr::rational(0);
    if (rest.size() == 1) return rest.front();
    return Expr::nary(ExprKind::Add, std::move(rest));
  }

  Expr simplify_mul(std::vector<Expr> kids) {
    Rational prod = 1;
    std::vector<Expr> rest;
    for (auto& k : kids) {
      if (k.is_const()) {
        prod *= k.value().as_rational();
      } else {
        rest.push_back(std::move(k));
      }
    }
    if (prod == 0) return Expr::rational(0);
    if (rest.empty()) return Expr::constant(Value(prod));
    if (prod == -1) return Expr::neg(rest.size() == 1 ? rest.front() : Expr::nary(ExprKind::Mul, std::move(rest)));
    if (prod != 1) rest.insert(rest.begin(), Expr::constant(Value(prod)));
    if (rest.size() == 1) return rest.front();
    return Expr::nary(ExprKind::Mul, std::move(rest));
  }

  const Domain& domain_;
};

}  // namespace

Expr simplify(const Expr& e, const Domain& domain) {
  Simplifier s(domain);
  Expr cur = e;
  for (int round = 0; round < 64; ++round) {
    Expr next = s.run(cur);
    if (next == cur) return next;
    cur = std::move(next);
  }
  return cur;
}

}  // namespace gfb
