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

#ifndef GFB_MODEL_HPP
#define GFB_MODEL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gfb/algebra.hpp"
#include "gfb/expr.hpp"

namespace gfb {

using State = std::vector<Value>;

enum class SystemKind {
  Discrete,        ///< x(k+1) = f_x(x(k))
  VectorField,     ///< updates hold the right-hand sides of an ODE, dx/dt = f_x(x)
  DiscretizedODE,  ///< Euler step x + tau * phi_x with the step variable `tau` held constant
};

/// A discrete-time dynamical system D = (X, F) over one shared domain.
///
/// Multi-valued models keep their declared per-variable ranges in `ranges`; the domain
/// itself is the largest of them and every variable is evaluated over it.
struct DynSystem {
  std::string name;
  Domain domain = Domain::boolean();
  std::vector<std::string> vars;
  std::vector<Expr> updates;
  SystemKind kind = SystemKind::Discrete;
  std::optional<int> tau;
  std::vector<int> ranges;

  int size() const { return static_cast<int>(vars.size()); }
  /// -1 when the name is not declared.
  int index_of(std::string_view name) const;
  /// Declared maximum of variable i (the domain maximum unless narrowed).
  int range_of(int i) const;
  /// Every variable except the step variable.
  std::vector<int> state_vars() const;
  /// Variables that occur in no other variable's update (the step variable excluded).
  std::vector<int> outputs() const;

  /// Throws DomainError on any broken invariant.
  void validate() const;
};

/// Ordered disjoint cover of the variables by nonempty blocks.
///
/// Canonical form: members ascending, blocks ordered by their smallest member. Each block
/// carries a representative, the smallest member unless set explicitly.
class Partition {
 public:
  Partition() = default;
  static Partition from_blocks(int num_vars, std::vector<std::vector<int>> blocks);
  static Partition singletons(int num_vars);
  static Partition single_block(int num_vars);

  int num_vars() const { return static_cast<int>(block_of_.size()); }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& block(int b) const { return blocks_[b]; }
  int block_of(int var) const { return block_of_[var]; }
  int representative(int b) const { return reps_[b]; }
  void set_representative(int b, int var);

  /// Every block of *this lies inside a block of coarser.
  bool refines(const Partition& coarser) const;

  std::string to_string(std::span<const std::string> names) const;

  /// Compares blocks only; representatives do not change the equivalence.
  friend bool operator==(const Partition& a, const Partition& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<std::vector<int>> blocks_;
  std::vector<int> reps_;
  std::vector<int> block_of_;
};

/// Throws DomainError unless p covers sys and keeps the step variable in its own block.
void check_partition(const DynSystem& sys, const Partition& p);

/// Summary of one refinement run.
struct ReductionReport {
  int original_vars = 0;
  int reduced_blocks = 0;
  double ratio = 1.0;
  int iterations = 0;
  std::int64_t psi_checks = 0;
  std::string backend;
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
  std::vector<std::vector<std::string>> blocks;
  /// Pairs added by the transitive closure when splitting blocks. Always 0 for a correct
  /// checker; anything else is reported as a diagnostic.
  std::int64_t closure_added_pairs = 0;
};

}  // namespace gfb

#endif
