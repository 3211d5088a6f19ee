#include "metabranch/padic.hpp"

#include <algorithm>
#include <cmath>

#include "metabranch/error.hpp"

namespace metabranch {

namespace {

int digits_needed_for_class(std::uint64_t p) { return p == 2 ? 3 : 1; }

}  // namespace

// ---------------------------------------------------------------- LocalField

LocalField LocalField::make(std::uint64_t p, int precision) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidField, std::to_string(p) + " is not prime");
  const int floor = p == 2 ? 8 : 20;
  if (precision < floor)
    throw Error(ErrorCode::InvalidField, "precision " + std::to_string(precision) +
                                             " below the floor " + std::to_string(floor));
  // mulmod needs p^K < 2^126.
  if (static_cast<double>(precision) * std::log2(static_cast<double>(p)) > 120.0)
    throw Error(ErrorCode::InvalidField, "p^K exceeds the 120-bit unit budget");
  std::uint64_t nonresidue = 0;
  if (p != 2) {
    nonresidue = 2;
    while (legendre(nonresidue, p) != -1) ++nonresidue;
  }
  return LocalField(p, precision, nonresidue);
}

LocalField LocalField::make(std::uint64_t p) { return make(p, default_precision(p)); }

std::string LocalField::name() const { return "Q_" + std::to_string(p_); }

// --------------------------------------------------------------- PadicNumber

PadicNumber PadicNumber::zero(const LocalField& field) {
  return PadicNumber(field.p(), kInfinity, 0, field.precision());
}

PadicNumber PadicNumber::normalized(std::uint64_t p, std::int64_t valuation, u128 value,
                                    int precision) {
  int shift = 0;
  while (value % p == 0) {
    value /= p;
    ++shift;
  }
  const int prec = precision - shift;
  return PadicNumber(p, valuation + shift, value % ipow(p, prec), prec);
}

PadicNumber PadicNumber::from_integer(const LocalField& field, i128 n) {
  if (n == 0) return zero(field);
  const std::uint64_t p = field.p();
  const bool negative = n < 0;
  u128 m = negative ? static_cast<u128>(-n) : static_cast<u128>(n);
  std::int64_t v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  const u128 mod = ipow(p, field.precision());
  u128 unit = m % mod;
  if (negative) unit = mod - unit;
  return PadicNumber(p, v, unit, field.precision());
}

PadicNumber PadicNumber::from_rational(const LocalField& field, i128 num, i128 den) {
  if (den == 0) throw Error(ErrorCode::ZeroInput, "zero denominator");
  return from_integer(field, num) / from_integer(field, den);
}

PadicNumber PadicNumber::from_parts(const LocalField& field, std::int64_t valuation, u128 unit) {
  if (unit % field.p() == 0)
    throw Error(ErrorCode::ZeroInput, "unit part must be coprime to p");
  return PadicNumber(field.p(), valuation, unit % ipow(field.p(), field.precision()),
                     field.precision());
}

PadicNumber PadicNumber::power_of_p(const LocalField& field, std::int64_t exponent) {
  return PadicNumber(field.p(), exponent, 1, field.precision());
}

void PadicNumber::require_same_prime(const PadicNumber& other) const {
  if (p_ != other.p_) throw Error(ErrorCode::InvalidField, "mixed residue characteristics");
}

u128 PadicNumber::unit_mod_power(int digits) const {
  if (is_zero()) throw Error(ErrorCode::ZeroInput, "unit part of zero");
  if (digits > precision_)
    throw Error(ErrorCode::InsufficientPrecision,
                "need " + std::to_string(digits) + " digits, have " + std::to_string(precision_));
  return unit_ % ipow(p_, digits);
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  return PadicNumber(p_, valuation_, ipow(p_, precision_) - unit_, precision_);
}

PadicNumber PadicNumber::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroInput, "inverse of zero");
  return PadicNumber(p_, -valuation_, invmod(unit_, ipow(p_, precision_)), precision_);
}

PadicNumber PadicNumber::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  PadicNumber result(p_, 0, 1, precision_);
  PadicNumber base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  a.require_same_prime(b);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const PadicNumber& lo = a.valuation_ <= b.valuation_ ? a : b;
  const PadicNumber& hi = a.valuation_ <= b.valuation_ ? b : a;
  const std::int64_t absolute =
      std::min(lo.valuation_ + lo.precision_, hi.valuation_ + hi.precision_);
  const std::int64_t rel = absolute - lo.valuation_;
  if (rel <= 0)
    throw Error(ErrorCode::InsufficientPrecision, "sum has no known digits");
  const std::uint64_t p = a.p_;
  const u128 mod = ipow(p, static_cast<int>(rel));
  const std::int64_t shift = hi.valuation_ - lo.valuation_;
  u128 term = 0;
  if (shift < rel) term = mulmod(hi.unit_ % mod, ipow(p, static_cast<int>(shift)) % mod, mod);
  const u128 total = (lo.unit_ % mod + term) % mod;
  if (total == 0)
    throw Error(ErrorCode::InsufficientPrecision,
                "sum vanishes to working precision (" + std::to_string(rel) + " digits)");
  return PadicNumber::normalized(p, lo.valuation_, total, static_cast<int>(rel));
}

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  a.require_same_prime(b);
  if (a.is_zero() || b.is_zero()) return a.is_zero() ? a : b;
  const int prec = std::min(a.precision_, b.precision_);
  const u128 mod = ipow(a.p_, prec);
  return PadicNumber(a.p_, a.valuation_ + b.valuation_, mulmod(a.unit_, b.unit_, mod), prec);
}

bool PadicNumber::is_square() const {
  if (is_zero()) return true;
  if (valuation_ % 2 != 0) return false;
  if (p_ == 2) return unit_mod_power(3) == 1;
  return legendre(unit_mod_power(1), p_) == 1;
}

PadicNumber PadicNumber::sqrt() const {
  if (is_zero()) return *this;
  if (!is_square()) throw Error(ErrorCode::ZeroInput, "square root of a non-square");
  const u128 mod = ipow(p_, precision_);
  if (p_ == 2) {
    // Lift bit by bit; the root is determined modulo 2^(K-1).
    u128 r = 1;
    for (int k = 3; k < precision_; ++k) {
      const u128 m = ipow(2, k + 1);
      if ((mulmod(r, r, m) + m - unit_ % m) % m != 0) r += ipow(2, k - 1);
    }
    const int prec = precision_ - 1;
    return PadicNumber(2, valuation_ / 2, r % ipow(2, prec), prec);
  }
  u128 r = 1;
  while (mulmod(r, r, p_) != unit_ % p_) ++r;
  // Newton iteration doubles the number of correct digits each round.
  for (int known = 1; known < precision_; known *= 2) {
    const u128 f = (mulmod(r, r, mod) + mod - unit_) % mod;
    const u128 step = mulmod(f, invmod(mulmod(2, r, mod), mod), mod);
    r = (r + mod - step) % mod;
  }
  return PadicNumber(p_, valuation_ / 2, r, precision_);
}

bool PadicNumber::agrees_with(const PadicNumber& other) const {
  if (p_ != other.p_) return false;
  if (is_zero() || other.is_zero()) return is_zero() && other.is_zero();
  if (valuation_ != other.valuation_) return false;
  const u128 mod = ipow(p_, std::min(precision_, other.precision_));
  return unit_ % mod == other.unit_ % mod;
}

std::string PadicNumber::to_string() const {
  if (is_zero()) return "0";
  return std::to_string(p_) + "^" + std::to_string(valuation_) + "*" +
         metabranch::to_string(unit_) + " (mod " + std::to_string(p_) + "^" +
         std::to_string(precision_) + ")";
}

// --------------------------------------------------------------- SquareClass

std::string SquareClass::label() const {
  if (p == 2) {
    std::int64_t v = 1;
    if (bits & 1u) v = -v;
    if (bits & 2u) v *= 2;
    if (bits & 4u) v *= 5;
    return std::to_string(v);
  }
  static const char* const kNames[] = {"1", "u", "p", "up"};
  return kNames[bits & 3u];
}

std::int64_t SquareClass::representative_integer(const LocalField& field) const {
  std::int64_t v = 1;
  if (field.is_dyadic()) {
    if (bits & 1u) v = -v;
    if (bits & 2u) v *= 2;
    if (bits & 4u) v *= 5;
    return v;
  }
  if (bits & 1u) v *= static_cast<std::int64_t>(field.nonresidue());
  if (bits & 2u) v *= static_cast<std::int64_t>(field.p());
  return v;
}

PadicNumber SquareClass::representative(const LocalField& field) const {
  return PadicNumber::from_integer(field, representative_integer(field));
}

SquareClass class_from_bits(const LocalField& field, unsigned bits) {
  if (bits >= static_cast<unsigned>(field.class_count()))
    throw Error(ErrorCode::InvalidField, "square-class coordinates out of range");
  return SquareClass{field.p(), bits};
}

SquareClass parse_square_class(const LocalField& field, const std::string& label) {
  for (int bits = 0; bits < field.class_count(); ++bits) {
    const SquareClass c{field.p(), static_cast<unsigned>(bits)};
    if (c.label() == label) return c;
  }
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(label, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != label.size())
    throw Error(ErrorCode::InvalidField, "unknown square class '" + label + "'");
  return classify(field, PadicNumber::from_integer(field, value));
}

SquareClass classify(const LocalField& field, const PadicNumber& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "square class of zero");
  if (a.prime() != field.p()) throw Error(ErrorCode::InvalidField, "element of another field");
  const unsigned parity = static_cast<unsigned>(a.valuation() & 1);
  const u128 residue = a.unit_mod_power(digits_needed_for_class(field.p()));
  if (field.is_dyadic()) {
    const unsigned r = static_cast<unsigned>(residue);
    const unsigned minus = (r == 3 || r == 7) ? 1u : 0u;
    const unsigned five = (r == 3 || r == 5) ? 1u : 0u;
    return SquareClass{2, minus | (parity << 1) | (five << 2)};
  }
  const unsigned nonsquare = legendre(residue, field.p()) == -1 ? 1u : 0u;
  return SquareClass{field.p(), nonsquare | (parity << 1)};
}

SquareClassGroup square_class_group(const LocalField& field) {
  SquareClassGroup group;
  const int n = field.class_count();
  for (int bits = 0; bits < n; ++bits)
    group.elements.push_back(SquareClass{field.p(), static_cast<unsigned>(bits)});
  // The table is filled by classifying products of representatives rather
  // than by XOR, so closure of the transversal is actually exercised.
  group.table.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const PadicNumber prod =
          group.elements[i].representative(field) * group.elements[j].representative(field);
      group.table[i][j] = static_cast<int>(classify(field, prod).bits);
    }
  }
  return group;
}

}  // namespace metabranch
