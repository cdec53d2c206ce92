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

#ifndef GFB_DYNAMICS_HPP
#define GFB_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfb/algebra.hpp"
#include "gfb/model.hpp"

namespace gfb {

using Trajectory = std::vector<State>;

/// Synchronous update: every f_x reads the previous state.
State step(const DynSystem& sys, const State& s);
/// s0, F(s0), ..., F^k(s0).
Trajectory simulate(const DynSystem& sys, const State& s0, int k);

/// Block sums psi(s)_C in partition order.
State project(const Partition& p, const Monoid& monoid, const State& s);

struct CommutationResult {
  bool ok = true;
  /// First t with psi(s_t) != reduced state t, or -1.
  int divergence = -1;
  State original;
  State reduced;
};

/// Runs sys from s0 and reduced from psi(s0) for k steps and compares block sums.
CommutationResult check_commutation(const DynSystem& sys, const DynSystem& reduced, const Partition& p,
                                    const Monoid& monoid, const State& s0, int k);

struct Attractor {
  /// Cycle in update order, starting from the smallest state code.
  std::vector<State> states;
  int period = 0;
  std::uint64_t basin = 0;
};

struct AttractorOptions {
  std::uint64_t state_limit = std::uint64_t{1} << 22;
  int jobs = 1;
};

/// Mixed-radix code of a finite state, variable 0 most significant, radix = range + 1.
std::uint64_t encode_state(const DynSystem& sys, const State& s);
State decode_state(const DynSystem& sys, std::uint64_t code);
std::uint64_t state_count(const DynSystem& sys);

/// Successor code of every state. Throws LimitError beyond opts.state_limit.
std::vector<std::uint32_t> successor_table(const DynSystem& sys, const AttractorOptions& opts = {});

/// Every cycle of the functional graph with its exact basin size, sorted by first state.
std::vector<Attractor> attractors(const DynSystem& sys, const AttractorOptions& opts = {});

struct PreservationResult {
  bool ok = true;
  /// One line per original attractor.
  std::vector<std::string> report;
};

/// For each attractor A of sys: psi(A) is closed under the reduced map and lies inside one
/// attractor of reduced.
PreservationResult check_attractor_preservation(const DynSystem& sys, const DynSystem& reduced, const Partition& p,
                                                const Monoid& monoid, const AttractorOptions& opts = {});

/// [{"period": .., "states": [[..], ..], "basin": ..}, ..]
std::string attractors_json(const std::vector<Attractor>& as);

std::string format_state(const State& s);

}  // namespace gfb

#endif
