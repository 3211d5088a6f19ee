#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "metabranch/padic.hpp"
#include "metabranch/quadext.hpp"

namespace metabranch {

/// Element of mu_2 = {+1, -1}.
class Sign {
 public:
  constexpr Sign() = default;
  static constexpr Sign plus() { return Sign(1); }
  static constexpr Sign minus() { return Sign(-1); }
  /// Additive F2 notation: bit 0 is +1, bit 1 is -1.
  static constexpr Sign from_bit(unsigned bit) { return Sign(bit & 1u ? -1 : 1); }

  constexpr int value() const noexcept { return value_; }
  constexpr unsigned bit() const noexcept { return value_ < 0 ? 1u : 0u; }
  constexpr bool is_plus() const noexcept { return value_ > 0; }

  constexpr Sign operator*(Sign o) const { return Sign(value_ * o.value_); }
  constexpr Sign& operator*=(Sign o) {
    value_ *= o.value_;
    return *this;
  }
  constexpr Sign operator-() const { return Sign(-value_); }
  friend constexpr bool operator==(Sign a, Sign b) { return a.value_ == b.value_; }
  friend constexpr bool operator!=(Sign a, Sign b) { return a.value_ != b.value_; }

 private:
  constexpr explicit Sign(int v) : value_(v) {}
  int value_ = 1;
};

/// Quadratic Hilbert symbol (a, b)_F on square classes. Closed form for odd
/// p; for Q_2 a table filled once by hilbert_oracle.
Sign hilbert(const LocalField& field, SquareClass a, SquareClass b);
Sign hilbert(const LocalField& field, const PadicNumber& a, const PadicNumber& b);

/// +1 iff z^2 = a x^2 + b y^2 has a primitive solution modulo p^M, with
/// M = 3 for odd p and M = 8 for p = 2. Coefficients are the transversal
/// representatives, whose valuations are 0 or 1.
Sign hilbert_oracle(const LocalField& field, SquareClass a, SquareClass b);

/// Hilbert symbol of E on E^x/E^x2. Odd p uses the residue-field closed
/// form; extensions of Q_2 read a cached table built by hilbert_ext_oracle.
Sign hilbert_ext(const QuadExt& ext, ExtClass a, ExtClass b);

/// Search oracle valid for every p: (a, b)_E = +1 iff -ab is a square or a
/// is represented by x^2 + ab*y^2, scanned over a grid of integral x, y.
Sign hilbert_ext_oracle(const QuadExt& ext, ExtClass a, ExtClass b);

/// Classes represented by x^2 + c*y^2 (the norm group of E(sqrt(-c))/E),
/// from the same grid scan the oracle uses. Bit i set means class i is hit.
std::uint64_t represented_classes(const QuadExt& ext, ExtClass c);

struct NormCompatibilityEntry {
  ExtClass a;
  SquareClass b;
  Sign lhs;  // (a, b)_E
  Sign rhs;  // (Nm a, b)_F
  bool pass() const { return lhs == rhs; }
};

struct NormCompatibilityReport {
  std::vector<NormCompatibilityEntry> entries;

  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }
};

/// Sweeps every a in E^x/E^x2 and b in F^x/F^x2, comparing (a, b)_E with
/// (Nm a, b)_F.
NormCompatibilityReport check_norm_compatibility(const QuadExt& ext);

/// mu_psi(a) for psi of conductor Z_p, as an exact label k (meaning
/// exp(2 pi i k / 8)) plus the floating value it was snapped from.
struct WeilIndex {
  int label = 0;
  std::complex<double> witness{1.0, 0.0};

  std::complex<double> exact() const;
  WeilIndex operator*(const WeilIndex& o) const {
    return {(label + o.label) % 8, witness * o.witness};
  }
  WeilIndex operator*(Sign s) const {
    return {(label + (s.is_plus() ? 0 : 4)) % 8, witness * static_cast<double>(s.value())};
  }
  friend bool operator==(const WeilIndex& a, const WeilIndex& b) { return a.label == b.label; }
};

/// Normalized quadratic Gauss sum G/sqrt(p), snapped to an 8th root of unity
/// and checked against Gauss's evaluation (1 for p = 1 mod 4, i otherwise).
WeilIndex gauss_sum_normalized(std::uint64_t p);

WeilIndex weil_index(const LocalField& field, SquareClass a);

}  // namespace metabranch
