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

// Test-only reference implementations. Nothing here calls the evaluation, checking or
// enumeration code of the library, so agreement with it is evidence rather than tautology.
#ifndef GFB_TESTS_ORACLES_HPP
#define GFB_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "gfb/algebra.hpp"
#include "gfb/expr.hpp"
#include "gfb/model.hpp"

namespace oracle {

using Blocks = std::vector<std::vector<int>>;

inline int apply(gfb::MonoidOp op, int a, int b) {
  switch (op) {
    case gfb::MonoidOp::And: return a && b ? 1 : 0;
    case gfb::MonoidOp::Or: return a || b ? 1 : 0;
    case gfb::MonoidOp::Xor: return (a + b) % 2;
    case gfb::MonoidOp::Min: return a < b ? a : b;
    case gfb::MonoidOp::Max: return a > b ? a : b;
    default: throw std::logic_error("oracle: not a finite operation");
  }
}

inline int unit(gfb::MonoidOp op, int max) {
  switch (op) {
    case gfb::MonoidOp::And: return 1;
    case gfb::MonoidOp::Min: return max;
    default: return 0;
  }
}

/// Plain recursive interpreter for finite-range trees.
inline int eval(const gfb::Expr& e, const std::vector<int>& s, int max) {
  using gfb::ExprKind;
  auto kids = e.children();
  switch (e.kind()) {
    case ExprKind::Var: return s.at(e.var());
    case ExprKind::Const: return e.value().as_int();
    case ExprKind::Not: return max - eval(kids[0], s, max);
    case ExprKind::Eq: return eval(kids[0], s, max) == e.eq_value() ? 1 : 0;
    case ExprKind::And:
    case ExprKind::Min: {
      int acc = e.kind() == ExprKind::And ? 1 : max;
      for (const auto& k : kids) acc = std::min(acc, eval(k, s, max));
      return acc;
    }
    case ExprKind::Or:
    case ExprKind::Max: {
      int acc = 0;
      for (const auto& k : kids) acc = std::max(acc, eval(k, s, max));
      return acc;
    }
    case ExprKind::Xor: {
      int acc = 0;
      for (const auto& k : kids) acc ^= eval(k, s, max);
      return acc;
    }
    default: throw std::logic_error("oracle: rational node in finite evaluation");
  }
}

inline gfb::Rational eval_q(const gfb::Expr& e, const std::vector<gfb::Rational>& s) {
  using gfb::ExprKind;
  auto kids = e.children();
  switch (e.kind()) {
    case ExprKind::Var: return s.at(e.var());
    case ExprKind::Const: return e.value().as_rational();
    case ExprKind::Neg: return -eval_q(kids[0], s);
    case ExprKind::Add: {
      gfb::Rational acc = 0;
      for (const auto& k : kids) acc += eval_q(k, s);
      return acc;
    }
    case ExprKind::Mul: {
      gfb::Rational acc = 1;
      for (const auto& k : kids) acc *= eval_q(k, s);
      return acc;
    }
    default: throw std::logic_error("oracle: finite node in rational evaluation");
  }
}

inline double eval_d(const gfb::Expr& e, const std::vector<double>& s) {
  using gfb::ExprKind;
  auto kids = e.children();
  switch (e.kind()) {
    case ExprKind::Var: return s.at(e.var());
    case ExprKind::Const: return e.value().as_rational().get_d();
    case ExprKind::Neg: return -eval_d(kids[0], s);
    case ExprKind::Add: {
      double acc = 0;
      for (const auto& k : kids) acc += eval_d(k, s);
      return acc;
    }
    case ExprKind::Mul: {
      double acc = 1;
      for (const auto& k : kids) acc *= eval_d(k, s);
      return acc;
    }
    default: throw std::logic_error("oracle: finite node in real evaluation");
  }
}

/// All states of n variables over {0..max}, variable 0 varying slowest.
inline std::vector<std::vector<int>> all_states(int n, int max) {
  std::vector<std::vector<int>> out{{}};
  for (int v = 0; v < n; ++v) {
    std::vector<std::vector<int>> next;
    for (const auto& s : out)
      for (int x = 0; x <= max; ++x) {
        auto t = s;
        t.push_back(x);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

/// Same with a separate range per variable.
inline std::vector<std::vector<int>> all_states(const std::vector<int>& ranges) {
  std::vector<std::vector<int>> out{{}};
  for (int r : ranges) {
    std::vector<std::vector<int>> next;
    for (const auto& s : out)
      for (int x = 0; x <= r; ++x) {
        auto t = s;
        t.push_back(x);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<int> step(const gfb::DynSystem& sys, const std::vector<int>& s) {
  std::vector<int> out;
  for (const auto& f : sys.updates) out.push_back(eval(f, s, sys.domain.max()));
  return out;
}

inline std::vector<int> sums(const Blocks& blocks, gfb::MonoidOp op, int max, const std::vector<int>& s) {
  std::vector<int> out;
  for (const auto& b : blocks) {
    int acc = unit(op, max);
    for (int v : b) acc = apply(op, acc, s[v]);
    out.push_back(acc);
  }
  return out;
}

/// Direct reading of the definition: any two states with equal block sums must have
/// successors with equal block sums. Compares every pair of states.
inline bool is_gfb(const gfb::DynSystem& sys, const Blocks& blocks, gfb::MonoidOp op) {
  const int max = sys.domain.max();
  auto states = all_states(sys.size(), max);
  std::vector<std::vector<int>> key;
  std::vector<std::vector<int>> image;
  for (const auto& s : states) {
    key.push_back(sums(blocks, op, max, s));
    image.push_back(sums(blocks, op, max, step(sys, s)));
  }
  for (std::size_t a = 0; a < states.size(); ++a)
    for (std::size_t b = a + 1; b < states.size(); ++b)
      if (key[a] == key[b] && image[a] != image[b]) return false;
  return true;
}

/// Every set partition of items, by inserting each item into an existing part or a new one.
inline std::vector<Blocks> set_partitions(const std::vector<int>& items) {
  std::vector<Blocks> out;
  Blocks cur;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == items.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t b = 0; b < cur.size(); ++b) {
      cur[b].push_back(items[k]);
      go(k + 1);
      cur[b].pop_back();
    }
    cur.push_back({items[k]});
    go(k + 1);
    cur.pop_back();
  };
  go(0);
  return out;
}

inline Blocks canonical(Blocks b) {
  for (auto& p : b) std::sort(p.begin(), p.end());
  std::sort(b.begin(), b.end());
  return b;
}

/// Every partition refining initial.
inline std::vector<Blocks> refinements(const Blocks& initial) {
  std::vector<Blocks> out{{}};
  for (const auto& blk : initial) {
    std::vector<Blocks> next;
    for (const auto& prefix : out)
      for (const auto& split : set_partitions(blk)) {
        Blocks b = prefix;
        b.insert(b.end(), split.begin(), split.end());
        next.push_back(std::move(b));
      }
    out = std::move(next);
  }
  for (auto& b : out) b = canonical(b);
  return out;
}

inline bool refines(const Blocks& fine, const Blocks& coarse) {
  std::map<int, int> owner;
  for (std::size_t k = 0; k < coarse.size(); ++k)
    for (int v : coarse[k]) owner[v] = static_cast<int>(k);
  for (const auto& b : fine)
    for (int v : b)
      if (owner.at(v) != owner.at(b.front())) return false;
  return true;
}

/// The valid refinement with fewest blocks, checked to be coarser than every other valid one.
inline Blocks coarsest(const gfb::DynSystem& sys, const Blocks& initial, gfb::MonoidOp op, bool* unique = nullptr) {
  std::vector<Blocks> valid;
  for (const auto& b : refinements(initial))
    if (is_gfb(sys, b, op)) valid.push_back(b);
  auto best = *std::min_element(valid.begin(), valid.end(),
                                [](const Blocks& a, const Blocks& b) { return a.size() < b.size(); });
  bool ok = true;
  for (const auto& b : valid) ok = ok && refines(b, best);
  if (unique) *unique = ok;
  return best;
}

inline Blocks blocks_of(const gfb::Partition& p) { return canonical(p.blocks()); }

// ---------------------------------------------------------------------------
// random systems

/// Random Boolean expression over variables [0, n).
inline gfb::Expr random_bool(std::mt19937_64& rng, int n, int depth) {
  using gfb::Expr;
  using gfb::ExprKind;
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> var(0, n - 1);
  int r = pick(rng);
  if (depth <= 0 || r < 3) {
    if (r == 0 && depth > 0) return Expr::constant(static_cast<int>(rng() % 2));
    return Expr::var(var(rng));
  }
  if (r == 3) return Expr::lnot(random_bool(rng, n, depth - 1));
  ExprKind k = r < 6 ? ExprKind::And : r < 9 ? ExprKind::Or : ExprKind::Xor;
  std::vector<Expr> kids;
  int arity = 2 + static_cast<int>(rng() % 2);
  for (int a = 0; a < arity; ++a) kids.push_back(random_bool(rng, n, depth - 1));
  return Expr::nary(k, std::move(kids));
}

/// Random multi-valued expression over {0..max} using min, max, not and predicates.
inline gfb::Expr random_mv(std::mt19937_64& rng, int n, int max, int depth) {
  using gfb::Expr;
  using gfb::ExprKind;
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> var(0, n - 1);
  std::uniform_int_distribution<int> val(0, max);
  int r = pick(rng);
  if (depth <= 0 || r < 3) {
    if (r == 0) return Expr::constant(val(rng));
    if (r == 1) return Expr::eq(var(rng), val(rng));
    return Expr::var(var(rng));
  }
  if (r == 3) return Expr::lnot(random_mv(rng, n, max, depth - 1));
  ExprKind k = r < 7 ? ExprKind::Min : ExprKind::Max;
  std::vector<Expr> kids;
  for (int a = 0; a < 2; ++a) kids.push_back(random_mv(rng, n, max, depth - 1));
  return Expr::nary(k, std::move(kids));
}

/// Random polynomial expression with small integer coefficients.
inline gfb::Expr random_poly(std::mt19937_64& rng, int n, int depth) {
  using gfb::Expr;
  using gfb::ExprKind;
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> var(0, n - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  int r = pick(rng);
  if (depth <= 0 || r < 3) {
    if (r == 0) return Expr::rational(coef(rng), 1 + static_cast<long>(rng() % 3));
    return Expr::var(var(rng));
  }
  if (r == 3) return Expr::neg(random_poly(rng, n, depth - 1));
  ExprKind k = r < 7 ? ExprKind::Add : ExprKind::Mul;
  std::vector<Expr> kids;
  for (int a = 0; a < 2; ++a) kids.push_back(random_poly(rng, n, depth - 1));
  return Expr::nary(k, std::move(kids));
}

/// Random Boolean system whose updates mostly read block aggregates of a hidden partition,
/// so that nontrivial GFBs occur often. noise is the chance of reading a raw variable.
inline gfb::DynSystem random_structured(std::mt19937_64& rng, int n, gfb::MonoidOp op, double noise = 0.25) {
  using gfb::Expr;
  std::vector<int> label(n);
  for (int v = 0; v < n; ++v) label[v] = static_cast<int>(rng() % std::max(1, n - 1));
  std::map<int, std::vector<int>> hidden;
  for (int v = 0; v < n; ++v) hidden[label[v]].push_back(v);
  std::vector<Expr> atoms;
  for (auto& [l, members] : hidden) {
    std::vector<Expr> vs;
    for (int v : members) vs.push_back(Expr::var(v));
    atoms.push_back(gfb::combine_expr(gfb::Monoid(op, gfb::Domain::boolean()), vs));
  }
  std::bernoulli_distribution raw(noise);
  std::function<Expr(int)> gen = [&](int depth) -> Expr {
    int r = static_cast<int>(rng() % 8);
    if (depth <= 0 || r < 3) {
      if (raw(rng)) return Expr::var(static_cast<int>(rng() % n));
      return atoms[rng() % atoms.size()];
    }
    if (r == 3) return Expr::lnot(gen(depth - 1));
    gfb::ExprKind k = r < 6 ? gfb::ExprKind::And : r < 7 ? gfb::ExprKind::Or : gfb::ExprKind::Xor;
    return Expr::nary(k, {gen(depth - 1), gen(depth - 1)});
  };
  gfb::DynSystem sys;
  sys.name = "random";
  for (int v = 0; v < n; ++v) {
    sys.vars.push_back("v" + std::to_string(v));
    sys.updates.push_back(gen(2));
  }
  return sys;
}

inline gfb::DynSystem random_system(std::mt19937_64& rng, int n, int depth = 2) {
  gfb::DynSystem sys;
  sys.name = "random";
  for (int v = 0; v < n; ++v) {
    sys.vars.push_back("v" + std::to_string(v));
    sys.updates.push_back(random_bool(rng, n, depth));
  }
  return sys;
}

/// Random partition of [0, n).
inline Blocks random_blocks(std::mt19937_64& rng, int n) {
  std::map<int, std::vector<int>> parts;
  for (int v = 0; v < n; ++v) parts[static_cast<int>(rng() % n)].push_back(v);
  Blocks out;
  for (auto& [k, b] : parts) out.push_back(b);
  return canonical(out);
}

// ---------------------------------------------------------------------------
// Markov chains

/// Ordinary lumpability by row sums: within a block every state has the same total rate
/// into each other block.
inline bool ordinarily_lumpable(const std::vector<std::vector<gfb::Rational>>& rates, const Blocks& blocks) {
  for (const auto& b : blocks) {
    for (const auto& target : blocks) {
      if (&b == &target) continue;
      std::set<gfb::Rational> seen;
      for (int i : b) {
        gfb::Rational sum = 0;
        for (int j : target) sum += rates[i][j];
        seen.insert(sum);
      }
      if (seen.size() > 1) return false;
    }
  }
  return true;
}

}  // namespace oracle

#endif
