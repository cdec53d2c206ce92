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

#ifndef GFB_ALGEBRA_HPP
#define GFB_ALGEBRA_HPP

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace gfb {

using Rational = mpq_class;

/// Value domain: either the finite range {0, ..., m} or the exact rationals.
class Domain {
 public:
  enum class Kind { FiniteRange, Rational };

  static Domain boolean() { return finite(1); }
  static Domain finite(int max);
  static Domain rational() { return Domain(Kind::Rational, 0); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::FiniteRange; }
  bool is_boolean() const { return is_finite() && max_ == 1; }
  /// Largest value m of a finite range. Undefined for Rational.
  int max() const { return max_; }
  /// Number of values m + 1 of a finite range.
  int size() const { return max_ + 1; }

  std::string to_string() const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain(Kind kind, int max) : kind_(kind), max_(max) {}

  Kind kind_;
  int max_;
};

/// A small integer of a finite range or an exact rational in lowest terms.
class Value {
 public:
  Value() : v_(0) {}
  static Value finite(int v) { return Value(v); }
  Value(Rational q);  // NOLINT: implicit on purpose, rationals are values
  static Value rational(long num, long den = 1);

  bool is_finite() const { return std::holds_alternative<int>(v_); }
  int as_int() const { return std::get<int>(v_); }
  const Rational& as_rational() const { return std::get<Rational>(v_); }

  bool in(const Domain& d) const;
  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  explicit Value(int v) : v_(v) {}
  std::variant<int, Rational> v_;
};

enum class MonoidOp { And, Or, Xor, Min, Max, Plus, Times };

std::string_view to_string(MonoidOp op);
/// Accepts and/or/xor/min/max and plus|add|sum, times|mul|prod.
MonoidOp parse_monoid_op(std::string_view name);

/// Commutative monoid (M, op, neutral). Only the legal (op, domain) pairs can be built.
class Monoid {
 public:
  Monoid(MonoidOp op, Domain domain);

  MonoidOp op() const { return op_; }
  const Domain& domain() const { return domain_; }
  const Value& neutral() const { return neutral_; }
  /// Neutral element as a small integer, finite domains only.
  int neutral_int() const { return neutral_.as_int(); }

  std::string to_string() const;

 private:
  MonoidOp op_;
  Domain domain_;
  Value neutral_;
};

/// a (+) b. Throws DomainError when a value lies outside the monoid's domain.
Value combine(const Monoid& m, const Value& a, const Value& b);

/// Left fold from the neutral element.
Value fold(const Monoid& m, std::span<const Value> values);

/// Unchecked finite-range combine used by the enumeration kernels.
inline int combine_int(MonoidOp op, int a, int b) {
  switch (op) {
    case MonoidOp::And: return a & b;
    case MonoidOp::Or: return a | b;
    case MonoidOp::Xor: return a ^ b;
    case MonoidOp::Min: return a < b ? a : b;
    case MonoidOp::Max: return a < b ? b : a;
    default: return 0;
  }
}

}  // namespace gfb

#endif
