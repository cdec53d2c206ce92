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

#include "gfb/modular.hpp"

#include "gfb/error.hpp"

namespace gfb::modular {

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = mul(result, base, p);
    base = mul(base, base, p);
    exp >>= 1;
  }
  return result;
}

namespace {

std::uint64_t residue(const mpz_class& z, std::uint64_t p) {
  mpz_class r;
  mpz_class mod(std::to_string(p));
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mod.get_mpz_t());
  return std::stoull(r.get_str());
}

}  // namespace

std::uint64_t from_rational(const Rational& q, std::uint64_t p) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) {
    long n = q.get_num().get_si();
    long long m = static_cast<long long>(n % static_cast<long long>(p));
    if (m < 0) m += static_cast<long long>(p);
    return static_cast<std::uint64_t>(m);
  }
  std::uint64_t num = residue(q.get_num(), p);
  std::uint64_t den = residue(q.get_den(), p);
  if (den == 0)
    throw DomainError("denominator of " + q.get_str() + " vanishes mod " + std::to_string(p));
  return mul(num, pow(den, p - 2, p), p);
}

}  // namespace gfb::modular
