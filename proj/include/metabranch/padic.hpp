#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metabranch/modarith.hpp"

namespace metabranch {

/// The base field Q_p carried at a fixed working precision K: unit parts of
/// its elements live modulo p^K.
class LocalField {
 public:
  static constexpr int kDefaultPrecisionOdd = 20;
  static constexpr int kDefaultPrecisionTwo = 12;

  /// Validates primality and the precision floor (K >= 20 for odd p,
  /// K >= 8 for p = 2).
  static LocalField make(std::uint64_t p, int precision);
  static LocalField make(std::uint64_t p);

  static int default_precision(std::uint64_t p) {
    return p == 2 ? kDefaultPrecisionTwo : kDefaultPrecisionOdd;
  }

  std::uint64_t p() const noexcept { return p_; }
  int precision() const noexcept { return precision_; }
  /// Smallest positive quadratic non-residue mod p (0 for p = 2).
  std::uint64_t nonresidue() const noexcept { return nonresidue_; }
  bool is_dyadic() const noexcept { return p_ == 2; }

  /// Rank of F^x/F^x2 as an F2-space: 2 for odd p, 3 for Q_2.
  int class_rank() const noexcept { return p_ == 2 ? 3 : 2; }
  int class_count() const noexcept { return 1 << class_rank(); }

  std::string name() const;

  friend bool operator==(const LocalField& a, const LocalField& b) {
    return a.p_ == b.p_ && a.precision_ == b.precision_;
  }

 private:
  LocalField(std::uint64_t p, int precision, std::uint64_t nonresidue)
      : p_(p), precision_(precision), nonresidue_(nonresidue) {}

  std::uint64_t p_;
  int precision_;
  std::uint64_t nonresidue_;
};

/// Element p^v * u of Q_p with u a unit known modulo p^precision.
class PadicNumber {
 public:
  static constexpr std::int64_t kInfinity = INT64_MAX;

  static PadicNumber zero(const LocalField& field);
  static PadicNumber from_integer(const LocalField& field, i128 n);
  static PadicNumber from_rational(const LocalField& field, i128 num, i128 den);
  /// Builds p^valuation * unit; unit must be coprime to p.
  static PadicNumber from_parts(const LocalField& field, std::int64_t valuation, u128 unit);
  static PadicNumber power_of_p(const LocalField& field, std::int64_t exponent);

  bool is_zero() const noexcept { return valuation_ == kInfinity; }
  std::int64_t valuation() const noexcept { return valuation_; }
  /// Unit approximant in [1, p^precision); 0 for the zero element.
  u128 unit() const noexcept { return unit_; }
  /// Number of known p-adic digits of the unit part.
  int precision() const noexcept { return precision_; }
  std::uint64_t prime() const noexcept { return p_; }

  /// Unit part reduced modulo p^digits; throws InsufficientPrecision when
  /// fewer digits are known.
  u128 unit_mod_power(int digits) const;

  PadicNumber operator-() const;
  PadicNumber inverse() const;
  PadicNumber pow(std::int64_t e) const;

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
    return a * b.inverse();
  }

  /// True when the element is a p-adic integer (valuation >= 0 or zero).
  bool is_integral() const noexcept { return valuation_ >= 0; }
  bool is_unit() const noexcept { return valuation_ == 0; }

  /// Square root when one exists. Loses one digit for p = 2.
  bool is_square() const;
  PadicNumber sqrt() const;

  /// Equality up to the coarser of the two precisions. Exact zero only
  /// agrees with exact zero.
  bool agrees_with(const PadicNumber& other) const;

  /// Exact equality of the stored representation (same precision).
  friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.valuation_ == b.valuation_ && a.unit_ == b.unit_ &&
           a.precision_ == b.precision_;
  }

  /// "0" or "p^v*u" with u printed in decimal.
  std::string to_string() const;

 private:
  PadicNumber(std::uint64_t p, std::int64_t valuation, u128 unit, int precision)
      : p_(p), valuation_(valuation), unit_(unit), precision_(precision) {}

  static PadicNumber normalized(std::uint64_t p, std::int64_t valuation, u128 value, int precision);
  void require_same_prime(const PadicNumber& other) const;

  std::uint64_t p_;
  std::int64_t valuation_;
  u128 unit_;
  int precision_;
};

/// A coset of F^x2 in F^x, stored as its F2-coordinates over the fixed
/// generators (u0, p) for odd p and (-1, 2, 5) for p = 2.
struct SquareClass {
  std::uint64_t p = 0;
  unsigned bits = 0;

  bool is_trivial() const noexcept { return bits == 0; }
  SquareClass operator*(SquareClass other) const { return {p, bits ^ other.bits}; }
  friend bool operator==(SquareClass a, SquareClass b) { return a.p == b.p && a.bits == b.bits; }
  friend bool operator!=(SquareClass a, SquareClass b) { return !(a == b); }

  /// Serialized name: "1","u","p","up" for odd p; "1","-1",...,"-10" for p = 2.
  std::string label() const;
  /// Valuation parity of the representative.
  int parity() const noexcept { return static_cast<int>((bits >> 1) & 1u); }
  /// Integer representative from the canonical transversal.
  std::int64_t representative_integer(const LocalField& field) const;
  PadicNumber representative(const LocalField& field) const;
};

SquareClass class_from_bits(const LocalField& field, unsigned bits);
/// Parses a class label; also accepts the integer spelling of a
/// representative ("2" over Q_3 means u).
SquareClass parse_square_class(const LocalField& field, const std::string& label);

/// Square class of a nonzero element.
SquareClass classify(const LocalField& field, const PadicNumber& a);

struct SquareClassGroup {
  std::vector<SquareClass> elements;
  /// table[i][j] is the index of elements[i] * elements[j].
  std::vector<std::vector<int>> table;
};

SquareClassGroup square_class_group(const LocalField& field);

}  // namespace metabranch
