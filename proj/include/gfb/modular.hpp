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

#ifndef GFB_MODULAR_HPP
#define GFB_MODULAR_HPP

#include <cstdint>

#include "gfb/algebra.hpp"

namespace gfb::modular {

__extension__ using u128 = unsigned __int128;

inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  u128 s = static_cast<u128>(a) + b;
  return static_cast<std::uint64_t>(s % p);
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

inline std::uint64_t neg(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

std::uint64_t pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// Image of q in Z_p. Throws DomainError when the denominator vanishes mod p.
std::uint64_t from_rational(const Rational& q, std::uint64_t p);

/// 64-bit mixer used to derive independent seeds from (seed, i, j, trial) tuples.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

}  // namespace gfb::modular

#endif
