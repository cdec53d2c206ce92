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

#include "gfb/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <limits>

#include "gfb/error.hpp"

namespace gfb::kernels {

namespace {

void emit(const Expr& e, std::span<const int> slot_of, int max, Program& p, int depth) {
  using Op = Program::Op;
  p.stack_depth = std::max(p.stack_depth, depth + 1);
  switch (e.kind()) {
    case ExprKind::Var: {
      int v = e.var();
      if (v < 0 || static_cast<std::size_t>(v) >= slot_of.size() || slot_of[v] < 0)
        throw DomainError("variable without a slot in compiled expression");
      p.code.push_back({Op::Slot, slot_of[v]});
      return;
    }
    case ExprKind::Const:
      p.code.push_back({Op::Const, e.value().as_int()});
      return;
    case ExprKind::Not:
      emit(e.children()[0], slot_of, max, p, depth);
      p.code.push_back({Op::Not, 0});
      return;
    case ExprKind::Eq:
      emit(e.children()[0], slot_of, max, p, depth);
      p.code.push_back({Op::Eq, e.eq_value()});
      return;
    default: break;
  }
  Op op;
  switch (e.kind()) {
    case ExprKind::And: op = Op::And; break;
    case ExprKind::Or: op = Op::Or; break;
    case ExprKind::Xor: op = Op::Xor; break;
    case ExprKind::Min: op = Op::Min; break;
    case ExprKind::Max: op = Op::Max; break;
    default: throw DomainError("node kind has no finite-range code");
  }
  auto kids = e.children();
  if (kids.empty()) {
    int neutral = op == Op::And ? 1 : op == Op::Min ? max : 0;
    p.code.push_back({Op::Const, neutral});
    return;
  }
  for (std::size_t k = 0; k < kids.size(); ++k) emit(kids[k], slot_of, max, p, depth + static_cast<int>(k));
  p.code.push_back({op, static_cast<std::int32_t>(kids.size())});
}

std::vector<Program> compile_all(std::span<const Expr> es, std::span<const int> slot_of, int max) {
  std::vector<Program> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(compile(e, slot_of, max));
  return out;
}

void decode(std::int64_t index, std::span<const int> radix, int* slots) {
  for (std::size_t t = 0; t < radix.size(); ++t) {
    slots[t] = static_cast<int>(index % radix[t]);
    index /= radix[t];
  }
}

std::int64_t count_states(std::span<const int> radix) {
  std::int64_t total = 1;
  for (int r : radix) {
    if (total > std::numeric_limits<std::int64_t>::max() / r) throw LimitError("state space too large");
    total *= r;
  }
  return total;
}

}  // namespace

Program compile(const Expr& e, std::span<const int> slot_of, int max) {
  Program p;
  emit(e, slot_of, max, p, 0);
  return p;
}

int run(const Program& p, const int* slots, int max) {
  using Op = Program::Op;
  int stack[256];
  std::vector<int> big;
  int* sp = stack;
  if (p.stack_depth > 256) {
    big.resize(p.stack_depth);
    sp = big.data();
  }
  for (const auto& in : p.code) {
    switch (in.op) {
      case Op::Slot: *sp++ = slots[in.arg]; break;
      case Op::Const: *sp++ = in.arg; break;
      case Op::Not: sp[-1] = max - sp[-1]; break;
      case Op::Eq: sp[-1] = sp[-1] == in.arg ? 1 : 0; break;
      default: {
        int n = in.arg;
        int* base = sp - n;
        int acc = base[0];
        for (int k = 1; k < n; ++k) {
          int v = base[k];
          switch (in.op) {
            case Op::And: acc &= v; break;
            case Op::Or: acc |= v; break;
            case Op::Xor: acc ^= v; break;
            case Op::Min: acc = std::min(acc, v); break;
            default: acc = std::max(acc, v); break;
          }
        }
        sp = base;
        *sp++ = acc;
      }
    }
  }
  return sp[-1];
}

std::int64_t first_mismatch_serial(std::span<const Expr> lhs, std::span<const Expr> rhs, std::span<const int> vars,
                                   std::span<const int> radix, int num_vars, int max) {
  const std::int64_t total = count_states(radix);
  std::vector<int> state(num_vars, 0);
  std::vector<int> digit(vars.size(), 0);
  for (std::int64_t index = 0; index < total; ++index) {
    for (std::size_t c = 0; c < lhs.size(); ++c)
      if (evaluate_finite(lhs[c], state, max) != evaluate_finite(rhs[c], state, max)) return index;
    for (std::size_t t = 0; t < vars.size(); ++t) {
      if (++digit[t] < radix[t]) {
        state[vars[t]] = digit[t];
        break;
      }
      digit[t] = 0;
      state[vars[t]] = 0;
    }
  }
  return -1;
}

std::int64_t first_mismatch_parallel(std::span<const Expr> lhs, std::span<const Expr> rhs, std::span<const int> vars,
                                     std::span<const int> radix, int num_vars, int max, int jobs) {
  const std::int64_t total = count_states(radix);
  std::vector<int> slot_of(num_vars, -1);
  for (std::size_t t = 0; t < vars.size(); ++t) slot_of[vars[t]] = static_cast<int>(t);
  const auto lp = compile_all(lhs, slot_of, max);
  const auto rp = compile_all(rhs, slot_of, max);
  const std::int64_t none = std::numeric_limits<std::int64_t>::max();
  const std::int64_t chunk = std::int64_t{1} << 16;
  const int width = static_cast<int>(vars.size());

  for (std::int64_t lo = 0; lo < total; lo += chunk) {
    const std::int64_t hi = std::min(total, lo + chunk);
    std::int64_t best = none;
#pragma omp parallel num_threads(jobs) reduction(min : best)
    {
      std::vector<int> slots(std::max(width, 1));
#pragma omp for schedule(static)
      for (std::int64_t index = lo; index < hi; ++index) {
        if (index > best) continue;
        decode(index, radix, slots.data());
        for (std::size_t c = 0; c < lp.size(); ++c) {
          if (run(lp[c], slots.data(), max) != run(rp[c], slots.data(), max)) {
            best = std::min(best, index);
            break;
          }
        }
      }
    }
    if (best != none) return best;
  }
  return -1;
}

std::vector<std::uint32_t> successor_table_serial(std::span<const Expr> updates, std::span<const int> radix, int max) {
  const std::int64_t total = count_states(radix);
  if (total > std::numeric_limits<std::uint32_t>::max()) throw LimitError("state space too large");
  const std::size_t n = updates.size();
  std::vector<std::uint32_t> next(total);
  std::vector<int> state(n, 0);
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t rest = code;
    for (std::size_t v = n; v-- > 0;) {
      state[v] = static_cast<int>(rest % radix[v]);
      rest /= radix[v];
    }
    std::int64_t out = 0;
    for (std::size_t v = 0; v < n; ++v) {
      int val = evaluate_finite(updates[v], state, max);
      if (val >= radix[v]) throw DomainError("update of variable " + std::to_string(v) + " leaves its range");
      out = out * radix[v] + val;
    }
    next[code] = static_cast<std::uint32_t>(out);
  }
  return next;
}

std::vector<std::uint32_t> successor_table_parallel(std::span<const Expr> updates, std::span<const int> radix, int max,
                                                    int jobs) {
  const std::int64_t total = count_states(radix);
  if (total > std::numeric_limits<std::uint32_t>::max()) throw LimitError("state space too large");
  const int n = static_cast<int>(updates.size());
  // slot t holds variable n-1-t so that decode() reads the least significant digit first
  std::vector<int> slot_of(n);
  std::vector<int> rev_radix(n);
  for (int v = 0; v < n; ++v) {
    slot_of[v] = n - 1 - v;
    rev_radix[n - 1 - v] = radix[v];
  }
  const auto progs = compile_all(updates, slot_of, max);
  std::vector<std::uint32_t> next(total);
  std::atomic<int> bad{-1};
#pragma omp parallel num_threads(jobs)
  {
    std::vector<int> slots(std::max(n, 1));
#pragma omp for schedule(static)
    for (std::int64_t code = 0; code < total; ++code) {
      decode(code, rev_radix, slots.data());
      std::int64_t out = 0;
      for (int v = 0; v < n; ++v) {
        int val = run(progs[v], slots.data(), max);
        if (val >= radix[v]) {
          bad.store(v);
          val = 0;
        }
        out = out * radix[v] + val;
      }
      next[code] = static_cast<std::uint32_t>(out);
    }
  }
  if (bad.load() >= 0) throw DomainError("update of variable " + std::to_string(bad.load()) + " leaves its range");
  return next;
}

}  // namespace gfb::kernels
