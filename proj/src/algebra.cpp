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

#include "gfb/algebra.hpp"

#include "gfb/error.hpp"

namespace gfb {

Domain Domain::finite(int max) {
  if (max < 1) throw DomainError("finite range needs m >= 1, got " + std::to_string(max));
  return Domain(Kind::FiniteRange, max);
}

std::string Domain::to_string() const {
  if (!is_finite()) return "Q";
  return "0.." + std::to_string(max_);
}

Value::Value(Rational q) : v_(std::move(q)) {
  std::get<Rational>(v_).canonicalize();
}

Value Value::rational(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  return Value(Rational(num, den));
}

bool Value::in(const Domain& d) const {
  if (d.is_finite()) return is_finite() && as_int() >= 0 && as_int() <= d.max();
  return !is_finite();
}

std::string Value::to_string() const {
  if (is_finite()) return std::to_string(as_int());
  return as_rational().get_str();
}

bool operator==(const Value& a, const Value& b) {
  if (a.is_finite() != b.is_finite()) return false;
  if (a.is_finite()) return a.as_int() == b.as_int();
  return a.as_rational() == b.as_rational();
}

std::string_view to_string(MonoidOp op) {
  switch (op) {
    case MonoidOp::And: return "and";
    case MonoidOp::Or: return "or";
    case MonoidOp::Xor: return "xor";
    case MonoidOp::Min: return "min";
    case MonoidOp::Max: return "max";
    case MonoidOp::Plus: return "plus";
    case MonoidOp::Times: return "times";
  }
  return "?";
}

MonoidOp parse_monoid_op(std::string_view name) {
  if (name == "and") return MonoidOp::And;
  if (name == "or") return MonoidOp::Or;
  if (name == "xor") return MonoidOp::Xor;
  if (name == "min") return MonoidOp::Min;
  if (name == "max") return MonoidOp::Max;
  if (name == "plus" || name == "add" || name == "sum") return MonoidOp::Plus;
  if (name == "times" || name == "mul" || name == "prod") return MonoidOp::Times;
  throw DomainError("unknown monoid operation '" + std::string(name) + "'");
}

Monoid::Monoid(MonoidOp op, Domain domain) : op_(op), domain_(domain) {
  switch (op) {
    case MonoidOp::And:
    case MonoidOp::Or:
    case MonoidOp::Xor:
      if (!domain.is_boolean())
        throw DomainError(std::string(gfb::to_string(op)) + " requires the Boolean domain");
      neutral_ = Value::finite(op == MonoidOp::And ? 1 : 0);
      break;
    case MonoidOp::Min:
    case MonoidOp::Max:
      if (!domain.is_finite())
        throw DomainError(std::string(gfb::to_string(op)) + " requires a finite range");
      neutral_ = Value::finite(op == MonoidOp::Min ? domain.max() : 0);
      break;
    case MonoidOp::Plus:
    case MonoidOp::Times:
      if (domain.is_finite())
        throw DomainError(std::string(gfb::to_string(op)) + " requires the rational domain");
      neutral_ = Value::rational(op == MonoidOp::Times ? 1 : 0);
      break;
  }
}

std::string Monoid::to_string() const {
  return "(" + domain_.to_string() + ", " + std::string(gfb::to_string(op_)) + ")";
}

Value combine(const Monoid& m, const Value& a, const Value& b) {
  if (!a.in(m.domain()) || !b.in(m.domain()))
    throw DomainError("value outside " + m.domain().to_string() + " in combine");
  switch (m.op()) {
    case MonoidOp::Plus: return Value(a.as_rational() + b.as_rational());
    case MonoidOp::Times: return Value(a.as_rational() * b.as_rational());
    default: return Value::finite(combine_int(m.op(), a.as_int(), b.as_int()));
  }
}

Value fold(const Monoid& m, std::span<const Value> values) {
  Value acc = m.neutral();
  for (const auto& v : values) acc = combine(m, acc, v);
  return acc;
}

}  // namespace gfb
