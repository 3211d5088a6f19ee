#include "metabranch/modarith.hpp"

#include <algorithm>

namespace metabranch {

u128 invmod(u128 a, u128 m) {
  // Extended Euclid on signed 128-bit values; m < 2^127 so nothing overflows
  // except the Bezout coefficients, which stay below m in magnitude.
  i128 old_r = static_cast<i128>(a % m), r = static_cast<i128>(m);
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  i128 inv = old_s % static_cast<i128>(m);
  if (inv < 0) inv += static_cast<i128>(m);
  return static_cast<u128>(inv);
}

u128 ipow(std::uint64_t base, int exp) {
  u128 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int legendre(u128 a, std::uint64_t p) {
  const u128 r = a % p;
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string to_string(i128 v) {
  if (v < 0) return "-" + to_string(static_cast<u128>(-v));
  return to_string(static_cast<u128>(v));
}

}  // namespace metabranch
