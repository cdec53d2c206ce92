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

#ifndef GFB_KERNELS_HPP
#define GFB_KERNELS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "gfb/expr.hpp"

namespace gfb::kernels {

/// Finite-range expression flattened to postfix code over a dense slot array.
struct Program {
  enum class Op : std::uint8_t { Slot, Const, Not, And, Or, Xor, Min, Max, Eq };
  struct Instr {
    Op op;
    std::int32_t arg;  // slot, constant, operand count or compared value
  };
  std::vector<Instr> code;
  int stack_depth = 0;
};

/// slot_of[v] gives the slot of variable v; every variable in support(e) must have one.
Program compile(const Expr& e, std::span<const int> slot_of, int max);

int run(const Program& p, const int* slots, int max);

/// Mixed-radix enumeration of slot assignments: slot t has radix[t] values and slot 0 is
/// the least significant digit. Returns the smallest index at which lhs[c] and rhs[c]
/// disagree for some c, or -1.
std::int64_t first_mismatch_serial(std::span<const Expr> lhs, std::span<const Expr> rhs, std::span<const int> vars,
                                   std::span<const int> radix, int num_vars, int max);
std::int64_t first_mismatch_parallel(std::span<const Expr> lhs, std::span<const Expr> rhs, std::span<const int> vars,
                                     std::span<const int> radix, int num_vars, int max, int jobs);

/// Successor of every state of a finite synchronous system. State codes are mixed radix with
/// variable 0 the most significant digit, radix[v] = range of v plus one. Throws DomainError
/// when an update leaves its variable's range.
std::vector<std::uint32_t> successor_table_serial(std::span<const Expr> updates, std::span<const int> radix, int max);
std::vector<std::uint32_t> successor_table_parallel(std::span<const Expr> updates, std::span<const int> radix, int max,
                                                    int jobs);

}  // namespace gfb::kernels

#endif
