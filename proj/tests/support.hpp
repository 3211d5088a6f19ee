#pragma once

// Generators and independent oracles shared by the unit tests. The oracles
// here are written from textbook formulas and do not call the library's
// symbol code.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "metabranch/heisenberg.hpp"
#include "metabranch/kubota.hpp"
#include "metabranch/padic.hpp"
#include "metabranch/quadext.hpp"

namespace testing_support {

using namespace metabranch;

inline const std::vector<std::uint64_t> kOddPrimes{3, 5, 7, 13};
inline const std::vector<std::uint64_t> kAllPrimes{2, 3, 5, 7, 13};

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng() % n; }
  int in_range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin(std::uint64_t one_in) { return below(one_in) == 0; }

  std::uint64_t prime() { return kAllPrimes[below(kAllPrimes.size())]; }
  std::uint64_t odd_prime() { return kOddPrimes[below(kOddPrimes.size())]; }

  /// Random unit at full precision.
  PadicNumber unit(const LocalField& f) {
    u128 modulus = 1;
    for (int i = 0; i < f.precision(); ++i) modulus *= f.p();
    u128 u = ((static_cast<u128>(rng()) << 64) | rng()) % modulus;
    if (u % f.p() == 0) u += 1;
    return PadicNumber::from_parts(f, 0, u);
  }
  PadicNumber nonzero(const LocalField& f, int max_valuation = 3) {
    return unit(f) * PadicNumber::power_of_p(f, in_range(-max_valuation, max_valuation));
  }
  /// Non-zero integer coprime to nothing in particular, |n| < 10^6.
  std::int64_t small_integer() {
    std::int64_t n = static_cast<std::int64_t>(below(1000000)) + 1;
    return coin(2) ? -n : n;
  }
  SquareClass square_class(const LocalField& f) {
    return class_from_bits(f, static_cast<unsigned>(below(static_cast<std::uint64_t>(f.class_count()))));
  }
  ExtClass ext_class(const QuadExt& e) { return ExtClass{static_cast<unsigned>(below(e.class_count()))}; }
  ExtElement ext_element(const QuadExt& e) {
    const LocalField& f = e.base();
    PadicNumber x = nonzero(f, 2);
    PadicNumber y = coin(4) ? PadicNumber::zero(f) : nonzero(f, 2);
    return e.element(x, y);
  }
  /// Random invertible matrix over F2 as columns.
  std::vector<std::uint32_t> invertible(int n) {
    for (;;) {
      std::vector<std::uint32_t> cols(static_cast<std::size_t>(n));
      for (auto& c : cols) c = static_cast<std::uint32_t>(below(std::uint64_t{1} << n));
      if (Subspace::span(n, cols).dim() == n) return cols;
    }
  }
};

/// Runs body(gen, case_index) for each case with a reproducible generator.
template <class Body>
void for_all(int cases, std::uint64_t seed, Body&& body) {
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) body(gen, i);
}

// ----------------------------------------------------------------- oracles

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

/// Legendre symbol by Euler's criterion; n must be coprime to p.
inline int euler_legendre(std::int64_t n, std::uint64_t p) {
  const auto r = static_cast<std::uint64_t>(((n % static_cast<std::int64_t>(p)) + static_cast<std::int64_t>(p)) %
                                            static_cast<std::int64_t>(p));
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// Splits n = p^v u with u coprime to p.
inline std::pair<int, std::int64_t> split_valuation(std::int64_t n, std::uint64_t p) {
  int v = 0;
  while (n % static_cast<std::int64_t>(p) == 0) {
    n /= static_cast<std::int64_t>(p);
    ++v;
  }
  return {v, n};
}

/// Textbook Hilbert symbol of two non-zero integers over Q_p.
/// Odd p: (-1)^(ab eps(p)) (u/p)^b (w/p)^a for a = p^a u, b = p^b w.
/// p = 2: (-1)^(eps(u)eps(w) + a omega(w) + b omega(u)).
inline int classical_hilbert(std::int64_t a, std::int64_t b, std::uint64_t p) {
  auto [va, u] = split_valuation(a, p);
  auto [vb, w] = split_valuation(b, p);
  if (p == 2) {
    auto mod = [](std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; };
    const std::int64_t eu = mod(u, 4) == 1 ? 0 : 1;
    const std::int64_t ew = mod(w, 4) == 1 ? 0 : 1;
    auto omega = [&](std::int64_t x) {
      const std::int64_t r = mod(x, 8);
      return (r == 3 || r == 5) ? 1 : 0;
    };
    const std::int64_t e = eu * ew + va * omega(w) + vb * omega(u);
    return e % 2 == 0 ? 1 : -1;
  }
  int s = ((va % 2) * (vb % 2) * ((p - 1) / 2 % 2)) ? -1 : 1;
  if (vb % 2) s *= euler_legendre(u, p);
  if (va % 2) s *= euler_legendre(w, p);
  return s;
}

/// Phase of sum over y mod p^2 of exp(2 pi i a y^2 / p^2): the Weil index of
/// x -> psi(a x^2) for psi of conductor Z_p and v(a) <= 1.
inline std::complex<double> weil_phase(std::int64_t a, std::uint64_t p) {
  const double two_pi = 2.0 * std::acos(-1.0);
  const std::int64_t m = static_cast<std::int64_t>(p * p);
  std::complex<double> sum = 0;
  for (std::int64_t y = 0; y < m; ++y) {
    const std::int64_t r = (((a % m) * ((y * y) % m)) % m + m) % m;
    sum += std::polar(1.0, two_pi * static_cast<double>(r) / static_cast<double>(m));
  }
  return sum / std::abs(sum);
}

/// mu(a) = gamma(psi) / gamma(psi_a) as a label k of exp(2 pi i k / 8).
inline int weil_label_oracle(std::int64_t a, std::uint64_t p) {
  const std::complex<double> mu = weil_phase(1, p) / weil_phase(a, p);
  const double eighths = std::arg(mu) / (std::acos(-1.0) / 4.0);
  return static_cast<int>(((std::lround(eighths) % 8) + 8) % 8);
}

/// Normalized quadratic Gauss sum over F_p.
inline std::complex<double> gauss_sum_oracle(std::uint64_t p) {
  const double two_pi = 2.0 * std::acos(-1.0);
  std::complex<double> sum = 0;
  for (std::uint64_t x = 0; x < p; ++x) sum += std::polar(1.0, two_pi * static_cast<double>(x * x % p) / p);
  return sum / std::sqrt(static_cast<double>(p));
}

}  // namespace testing_support
