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

#ifndef GFB_POLYNOMIAL_HPP
#define GFB_POLYNOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gfb/algebra.hpp"
#include "gfb/expr.hpp"

namespace gfb {

/// Sparse exponent vector: (variable, exponent) pairs sorted by variable, exponents > 0.
using Monomial = std::vector<std::pair<int, int>>;

inline constexpr std::size_t kDefaultTermCap = 100000;

/// Canonical multivariate polynomial over the rationals. Zero coefficients are never
/// stored, so two polynomials are equal iff their term maps are identical.
class Poly {
 public:
  Poly() = default;
  static Poly constant(const Rational& c);
  static Poly variable(int index);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return degree_; }
  std::size_t size() const { return terms_.size(); }
  /// Exponent of var in m (0 when absent).
  static int exponent(const Monomial& m, int var);

  Poly operator-() const;
  friend bool operator==(const Poly&, const Poly&) = default;

  /// Adds c * m in place.
  void add_term(const Monomial& m, const Rational& c);

  std::string to_string(std::span<const std::string> names = {}) const;

 private:
  void recompute_degree();
  std::map<Monomial, Rational> terms_;
  int degree_ = 0;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
/// Throws LimitError when the product has more than term_cap terms.
Poly poly_mul(const Poly& a, const Poly& b, std::size_t term_cap = kDefaultTermCap);

/// Full expansion of a Var/Const/Add/Mul/Neg tree. Throws DomainError on any other node
/// and LimitError once an intermediate result exceeds term_cap terms.
Poly from_expr(const Expr& e, std::size_t term_cap = kDefaultTermCap);

/// Drops every monomial whose tau exponent is >= order.
Poly truncate_tau(const Poly& p, int tau, int order = 2);

/// Coefficient of tau^k, as a polynomial without tau.
Poly tau_coefficient(const Poly& p, int tau, int k);

/// Evaluation over Z_prime; point is indexed by variable.
std::uint64_t eval_mod(const Poly& p, std::span<const std::uint64_t> point, std::uint64_t prime);

/// Exact evaluation; point is indexed by variable.
Rational evaluate(const Poly& p, std::span<const Rational> point);

/// Replaces each mapped variable by a polynomial (unmapped variables stay).
Poly compose(const Poly& p, const std::map<int, Poly>& images, std::size_t term_cap = kDefaultTermCap);

/// Sum-of-monomials expression tree.
Expr to_expr(const Poly& p);

}  // namespace gfb

#endif
