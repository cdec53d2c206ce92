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

#include <random>

#include "doctest.h"
#include "gfb/error.hpp"
#include "gfb/kernels.hpp"
#include "oracles.hpp"

using namespace gfb;

TEST_CASE("compiled programs agree with the oracle interpreter") {
  std::mt19937_64 rng(51);
  std::vector<int> slot_of{0, 1, 2};
  for (int k = 0; k < 300; ++k) {
    Expr e = oracle::random_mv(rng, 3, 2, 4);
    auto prog = kernels::compile(e, slot_of, 2);
    for (const auto& s : oracle::all_states(3, 2)) REQUIRE(kernels::run(prog, s.data(), 2) == oracle::eval(e, s, 2));
  }
  for (int k = 0; k < 300; ++k) {
    Expr e = oracle::random_bool(rng, 3, 4);
    auto prog = kernels::compile(e, slot_of, 1);
    for (const auto& s : oracle::all_states(3, 1)) REQUIRE(kernels::run(prog, s.data(), 1) == oracle::eval(e, s, 1));
  }
}

TEST_CASE("first mismatch: serial and parallel agree with a direct scan") {
  std::mt19937_64 rng(52);
  for (int k = 0; k < 100; ++k) {
    const int n = 4;
    std::vector<Expr> lhs{oracle::random_bool(rng, n, 3), oracle::random_bool(rng, n, 3)};
    std::vector<Expr> rhs{k % 3 ? oracle::random_bool(rng, n, 3) : lhs[0], lhs[1]};
    std::vector<int> vars{0, 1, 2, 3};
    std::vector<int> radix(n, 2);
    // slot 0 is the least significant digit
    std::int64_t want = -1;
    for (std::int64_t idx = 0; idx < 16 && want < 0; ++idx) {
      std::vector<int> s(n);
      for (int t = 0; t < n; ++t) s[vars[t]] = static_cast<int>(idx >> t) & 1;
      for (std::size_t c = 0; c < lhs.size(); ++c)
        if (oracle::eval(lhs[c], s, 1) != oracle::eval(rhs[c], s, 1)) want = idx;
    }
    REQUIRE(kernels::first_mismatch_serial(lhs, rhs, vars, radix, n, 1) == want);
    REQUIRE(kernels::first_mismatch_parallel(lhs, rhs, vars, radix, n, 1, 4) == want);
  }
}

TEST_CASE("first mismatch on a large support crosses chunk boundaries") {
  const int n = 20;
  std::vector<int> vars(n);
  for (int v = 0; v < n; ++v) vars[v] = v;
  std::vector<int> radix(n, 2);
  // lhs = x19 & x18, rhs = 0: the first mismatch sets both top digits
  std::vector<Expr> lhs{Expr::nary(ExprKind::And, {Expr::var(19), Expr::var(18)})};
  std::vector<Expr> rhs{Expr::constant(0)};
  const std::int64_t want = (std::int64_t{1} << 19) + (std::int64_t{1} << 18);
  CHECK(kernels::first_mismatch_serial(lhs, rhs, vars, radix, n, 1) == want);
  CHECK(kernels::first_mismatch_parallel(lhs, rhs, vars, radix, n, 1, 3) == want);
  std::vector<Expr> same{lhs[0]};
  CHECK(kernels::first_mismatch_parallel(lhs, same, vars, radix, n, 1, 3) == -1);
}

TEST_CASE("successor tables: serial, parallel and oracle agree") {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 50; ++k) {
    const int n = 5;
    std::vector<Expr> updates;
    for (int v = 0; v < n; ++v) updates.push_back(oracle::random_bool(rng, n, 3));
    std::vector<int> radix(n, 2);
    auto serial = kernels::successor_table_serial(updates, radix, 1);
    auto parallel = kernels::successor_table_parallel(updates, radix, 1, 4);
    REQUIRE(serial == parallel);
    auto states = oracle::all_states(n, 1);
    for (std::size_t code = 0; code < states.size(); ++code) {
      std::uint32_t next = 0;
      for (int v = 0; v < n; ++v) next = next * 2 + oracle::eval(updates[v], states[code], 1);
      REQUIRE(serial[code] == next);
    }
  }
}

TEST_CASE("successor tables with mixed radices") {
  // a in 0..2, b in 0..1: a' = max(a, b), b' = a:2
  std::vector<Expr> updates{Expr::nary(ExprKind::Max, {Expr::var(0), Expr::var(1)}), Expr::eq(0, 2)};
  std::vector<int> radix{3, 2};
  auto table = kernels::successor_table_serial(updates, radix, 2);
  REQUIRE(table.size() == 6);
  auto states = oracle::all_states({2, 1});
  for (std::size_t code = 0; code < states.size(); ++code) {
    int a = oracle::eval(updates[0], states[code], 2);
    int b = oracle::eval(updates[1], states[code], 2);
    CHECK(table[code] == static_cast<std::uint32_t>(a * 2 + b));
  }
  CHECK(kernels::successor_table_parallel(updates, radix, 2, 2) == table);
  // b' = a leaves b's range
  std::vector<Expr> bad{Expr::var(0), Expr::var(0)};
  CHECK_THROWS_AS(kernels::successor_table_serial(bad, radix, 2), DomainError);
  CHECK_THROWS_AS(kernels::successor_table_parallel(bad, radix, 2, 2), DomainError);
}
