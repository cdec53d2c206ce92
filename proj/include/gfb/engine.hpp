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

#ifndef GFB_ENGINE_HPP
#define GFB_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gfb/algebra.hpp"
#include "gfb/expr.hpp"
#include "gfb/model.hpp"
#include "gfb/polynomial.hpp"

namespace gfb {

/// Auto resolves to Exhaustive on finite domains and Randomized on the rationals.
/// Polynomial expands both sides of every clause and compares canonical forms exactly.
enum class Backend { Auto, Exhaustive, Randomized, Polynomial };

/// How the step variable of a discretized ODE takes part in a check. TauVariable treats it
/// as one more symbolic variable (verdicts hold for every step size); Truncate compares
/// polynomials after dropping tau^order and higher.
enum class TauMode { None, TauVariable, Truncate };

std::string_view to_string(Backend b);
Backend parse_backend(std::string_view name);

struct CheckerConfig {
  Backend backend = Backend::Auto;
  /// Exhaustive checks refuse more than 2^cutoff assignments of the clause support.
  int cutoff = 22;
  int trials = 40;
  std::uint64_t prime = 2147483647ULL;
  std::uint64_t seed = 0;
  std::size_t term_cap = kDefaultTermCap;
  TauMode tau_mode = TauMode::TauVariable;
  int truncate_order = 2;
  /// Worker threads for pair checks and enumeration kernels. 1 runs the serial code.
  int jobs = 1;
  /// Receives refinement diagnostics when set.
  std::ostream* log = nullptr;

  void validate() const;
};

struct PsiClause {
  int block;
  Expr lhs;
  Expr rhs;
};

/// Binary characterization formula for the pair (i, j): one clause per block whose update
/// sum can see x_i or x_j.
struct PsiInstance {
  int i;
  int j;
  Monoid monoid;
  int num_vars;
  std::optional<int> tau;
  std::vector<PsiClause> clauses;
};

enum class Status { Valid, Invalid, ProbablyValid };
std::string_view to_string(Status s);

/// A state on which some block sum of the updates differs from its substituted form.
/// For Psi witnesses, partner is state[i := 0][j := state_i (+) state_j]: both states have
/// the same block sums but lead to different block sums of F, which refutes the partition.
/// On the Randomized backend the values are residues modulo the prime.
struct Witness {
  State state;
  State partner;
  int block = -1;
  int i = -1;
  int j = -1;
};

struct Verdict {
  Status status = Status::Valid;
  std::optional<Witness> witness;
  int trials = 0;
  /// Per-trial false-acceptance bound d / prime of the Randomized backend.
  double per_trial_bound = 0.0;

  bool holds() const { return status != Status::Invalid; }
};

/// Throws DomainError unless i != j lie in one block of p.
PsiInstance build_psi(const DynSystem& sys, const Partition& p, int i, int j, const Monoid& monoid);

/// Decides a Psi instance with the configured backend. Throws LimitError when the
/// exhaustive support or, under tau truncation, the polynomial term cap is exceeded. The
/// untruncated polynomial backend falls back to randomized testing past the term cap.
Verdict check(const PsiInstance& psi, const Domain& domain, const CheckerConfig& cfg);

/// The backend that check() will actually run for the domain.
Backend resolve_backend(const Domain& domain, const CheckerConfig& cfg);

struct RefineResult {
  Partition partition;
  ReductionReport report;
};

/// Coarsest GFB refining initial, by repeated sweeps that split every block along the
/// pairs passing Psi in both directions.
RefineResult refine(const DynSystem& sys, const Partition& initial, const Monoid& monoid, const CheckerConfig& cfg);

enum class GfbMode {
  Pairs,      ///< Psi for every ordered pair inside each block
  Definition  ///< enumerate all states and compare F's block sums on states with equal block sums
};

Verdict is_gfb(const DynSystem& sys, const Partition& p, const Monoid& monoid, const CheckerConfig& cfg,
               GfbMode mode = GfbMode::Pairs);

/// Quotient system with one variable per block. Block variables keep member order of the
/// partition; the step variable keeps its name. The partition is not verified here.
DynSystem reduce(const DynSystem& sys, const Partition& p, const Monoid& monoid);

/// Names given to the blocks by reduce().
std::vector<std::string> block_names(const DynSystem& sys, const Partition& p);

/// Brute force over every partition refining initial (finite domains, at most 8 variables).
/// Throws Error if the valid partitions have no unique coarsest element.
Partition coarsest_gfb_oracle(const DynSystem& sys, const Partition& initial, const Monoid& monoid);

}  // namespace gfb

#endif
