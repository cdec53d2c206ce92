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

#ifndef GFB_EXPR_HPP
#define GFB_EXPR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gfb/algebra.hpp"

namespace gfb {

/// Node kinds of update-function trees.
///  - Not is m - x on the range {0..m}, classical negation on the Booleans.
///  - And/Or/Xor are Boolean only, Min/Max finite ranges, Add/Mul/Neg rationals.
///  - Eq(e, v) is the multi-valued predicate "e has value v" and yields 0 or 1. Parsed
///    models only produce it over variables; substitution may place compound children.
enum class ExprKind { Var, Const, Not, And, Or, Xor, Min, Max, Eq, Add, Mul, Neg };

/// Immutable expression tree. Copies share structure; every rewrite builds fresh nodes.
class Expr {
 public:
  static Expr var(int index);
  static Expr constant(Value v);
  static Expr constant(int v) { return constant(Value::finite(v)); }
  static Expr rational(long num, long den = 1) { return constant(Value::rational(num, den)); }
  static Expr eq(int index, int value);
  static Expr eq(Expr child, int value);
  static Expr lnot(Expr child);
  static Expr neg(Expr child);
  static Expr nary(ExprKind kind, std::vector<Expr> children);

  ExprKind kind() const;
  /// Variable index of a Var node.
  int var() const;
  /// Compared value of an Eq node.
  int eq_value() const;
  /// Value of a Const node.
  const Value& value() const;
  std::span<const Expr> children() const;

  bool is_const() const { return kind() == ExprKind::Const; }
  bool is_var() const { return kind() == ExprKind::Var; }

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline bool is_nary(ExprKind k) {
  switch (k) {
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Xor:
    case ExprKind::Min:
    case ExprKind::Max:
    case ExprKind::Add:
    case ExprKind::Mul:
      return true;
    default:
      return false;
  }
}

/// Node kind that realises the monoid operation.
ExprKind monoid_kind(MonoidOp op);

/// (+)-combination of the operands: the neutral constant for none, the operand itself for one.
Expr combine_expr(const Monoid& m, std::vector<Expr> operands);

/// Sorted variable indices occurring in e.
std::vector<int> support(const Expr& e);
bool mentions(const Expr& e, int var);

/// e[x / r]. No rewriting happens; r is copied into every occurrence of Var(x).
Expr substitute(const Expr& e, int x, const Expr& r);

/// Simultaneous substitution of every mapped variable. Inserted trees are not revisited,
/// so indices may be renamed freely (x -> y together with y -> x swaps them).
Expr substitute_all(const Expr& e, const std::map<int, Expr>& replacements);

/// Recursive evaluation. Throws DomainError for unassigned variables.
Value evaluate(const Expr& e, std::span<const Value> state, const Domain& domain);

/// Finite-range evaluation on plain integers, no legality checks.
int evaluate_finite(const Expr& e, std::span<const int> state, int max);

/// Floating-point evaluation of a rational expression.
double evaluate_double(const Expr& e, std::span<const double> state);

/// Evaluation over Z_prime. point[x] must hold a residue for every x in support(e).
std::uint64_t eval_mod(const Expr& e, std::span<const std::uint64_t> point, std::uint64_t prime);

/// Syntactic upper bound on the polynomial degree (sum over Mul children, max over Add).
int degree_bound(const Expr& e);

/// Best-effort semantics-preserving rewriting to a fixpoint. Not canonical.
Expr simplify(const Expr& e, const Domain& domain);

/// Throws DomainError when a node kind or constant is illegal for the domain or an index
/// falls outside [0, num_vars).
void validate(const Expr& e, const Domain& domain, int num_vars);

/// Surface syntax shared by the model emitters: `& | ^ !` and `name:v` on finite ranges,
/// `+ - *` on rationals.
std::string format(const Expr& e, std::span<const std::string> names);

}  // namespace gfb

#endif
