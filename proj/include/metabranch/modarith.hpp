#pragma once

#include <cstdint>
#include <string>

namespace metabranch {

using u128 = unsigned __int128;
using i128 = __int128;

inline u128 mulmod(u128 a, u128 b, u128 m) {
  constexpr u128 kLow = ~static_cast<u128>(0) >> 64;
  if (m <= kLow) return (a % m) * (b % m) % m;
  // Shift-and-add; m < 2^127 keeps the running sum from overflowing.
  a %= m;
  b %= m;
  u128 acc = 0;
  while (b != 0) {
    if (b & 1) {
      acc += a;
      if (acc >= m) acc -= m;
    }
    a += a;
    if (a >= m) a -= m;
    b >>= 1;
  }
  return acc;
}

inline u128 powmod(u128 base, u128 exp, u128 m) {
  u128 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m; a must be coprime to m.
u128 invmod(u128 a, u128 m);

u128 ipow(std::uint64_t base, int exp);

bool is_prime(std::uint64_t n);

/// Legendre symbol of a modulo an odd prime p, as +1, -1 or 0.
int legendre(u128 a, std::uint64_t p);

std::string to_string(u128 v);
std::string to_string(i128 v);

}  // namespace metabranch
