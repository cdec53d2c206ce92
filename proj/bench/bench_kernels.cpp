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

// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <thread>
#include <vector>

#include "gfb/kernels.hpp"

using namespace gfb;

namespace {

const int kJobs = std::max(2, static_cast<int>(std::thread::hardware_concurrency()));

Expr random_bool(std::mt19937_64& rng, int n, int depth) {
  if (depth == 0 || rng() % 4 == 0) {
    Expr v = Expr::var(static_cast<int>(rng() % n));
    return rng() % 3 == 0 ? Expr::lnot(v) : v;
  }
  static const ExprKind kinds[] = {ExprKind::And, ExprKind::Or, ExprKind::Xor};
  return Expr::nary(kinds[rng() % 3], {random_bool(rng, n, depth - 1), random_bool(rng, n, depth - 1)});
}

std::vector<Expr> random_updates(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Expr> out;
  for (int v = 0; v < n; ++v) out.push_back(random_bool(rng, n, 4));
  return out;
}

// Equal sides: the scan runs over the whole assignment space.
void BM_FirstMismatch(benchmark::State& state, bool parallel) {
  const int n = static_cast<int>(state.range(0));
  auto lhs = random_updates(n, 1);
  std::vector<int> vars(n);
  for (int v = 0; v < n; ++v) vars[v] = v;
  std::vector<int> radix(n, 2);
  for (auto _ : state) {
    auto r = parallel ? kernels::first_mismatch_parallel(lhs, lhs, vars, radix, n, 1, kJobs)
                      : kernels::first_mismatch_serial(lhs, lhs, vars, radix, n, 1);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

void BM_SuccessorTable(benchmark::State& state, bool parallel) {
  const int n = static_cast<int>(state.range(0));
  auto updates = random_updates(n, 2);
  std::vector<int> radix(n, 2);
  for (auto _ : state) {
    auto t = parallel ? kernels::successor_table_parallel(updates, radix, 1, kJobs)
                      : kernels::successor_table_serial(updates, radix, 1);
    benchmark::DoNotOptimize(t.data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}

}  // namespace

BENCHMARK_CAPTURE(BM_FirstMismatch, serial, false)->DenseRange(12, 18, 3);
BENCHMARK_CAPTURE(BM_FirstMismatch, parallel, true)->DenseRange(12, 18, 3);
BENCHMARK_CAPTURE(BM_SuccessorTable, serial, false)->DenseRange(12, 18, 3);
BENCHMARK_CAPTURE(BM_SuccessorTable, parallel, true)->DenseRange(12, 18, 3);

BENCHMARK_MAIN();
