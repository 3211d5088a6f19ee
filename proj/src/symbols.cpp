#include "metabranch/symbols.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "metabranch/error.hpp"

namespace metabranch {

namespace {

// (-1)^(alpha*beta*(q-1)/2 + s_a*beta + s_b*alpha) with bit0 = non-square
// residue and bit1 = valuation parity, the layout shared by F and odd-p E.
Sign tame_symbol(std::uint64_t q, unsigned a_bits, unsigned b_bits) {
  const unsigned sa = a_bits & 1u, alpha = (a_bits >> 1) & 1u;
  const unsigned sb = b_bits & 1u, beta = (b_bits >> 1) & 1u;
  const unsigned twist = static_cast<unsigned>(((q - 1) / 2) & 1u);
  return Sign::from_bit((alpha & beta & twist) ^ (sa & beta) ^ (sb & alpha));
}

using DyadicTable = std::array<std::array<int, 8>, 8>;

const DyadicTable& dyadic_table() {
  static const DyadicTable table = [] {
    const LocalField q2 = LocalField::make(2, 8);
    DyadicTable t{};
    for (unsigned i = 0; i < 8; ++i)
      for (unsigned j = 0; j < 8; ++j)
        t[i][j] = hilbert_oracle(q2, SquareClass{2, i}, SquareClass{2, j}).value();
    return t;
  }();
  return table;
}

using ExtTable = std::vector<std::vector<int>>;

std::vector<std::vector<int>> build_ext_table(const QuadExt& ext) {
  const int n = ext.class_count();
  ExtTable t(n, std::vector<int>(n, 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t[i][j] = hilbert_ext_oracle(ext, ExtClass{static_cast<unsigned>(i)},
                                   ExtClass{static_cast<unsigned>(j)})
                    .value();
  return t;
}

const ExtTable& cached_ext_table(const QuadExt& ext) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const ExtTable>> cache;
  const std::string key = ext.name() + "@" + std::to_string(ext.base().precision());
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto table = std::make_shared<const ExtTable>(build_ext_table(ext));
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(table));
  return *it->second;
}

constexpr std::int64_t kMaxGridSide = 64;

bool minus_is_square(const QuadExt& ext, ExtClass c) {
  const ExtElement r = ext.representative(c);
  return ext.classify(ExtElement{-r.x, -r.y}).is_trivial();
}

}  // namespace

Sign hilbert(const LocalField& field, SquareClass a, SquareClass b) {
  if (a.p != field.p() || b.p != field.p())
    throw Error(ErrorCode::InvalidField, "square class from another field");
  if (field.is_dyadic()) return Sign::from_bit(dyadic_table()[a.bits][b.bits] < 0 ? 1u : 0u);
  return tame_symbol(field.p(), a.bits, b.bits);
}

Sign hilbert(const LocalField& field, const PadicNumber& a, const PadicNumber& b) {
  return hilbert(field, classify(field, a), classify(field, b));
}

Sign hilbert_oracle(const LocalField& field, SquareClass a, SquareClass b) {
  // Representatives have valuation 0 or 1, so any primitive solution has x or
  // y a unit (otherwise z would be divisible by p as well). Scaling puts it in
  // one of the two normal forms scanned below. A primitive solution modulo
  // p^M lifts by Hensel: the unit coordinate's partial derivative has
  // valuation at most v(2) + 1, which needs M >= 3 (odd p) or M >= 5 (p = 2);
  // the scan uses 3 and 8.
  const std::uint64_t p = field.p();
  const int digits = field.is_dyadic() ? 8 : 3;
  const std::uint64_t mod = static_cast<std::uint64_t>(ipow(p, digits));
  std::vector<bool> is_square(mod, false);
  for (std::uint64_t z = 0; z < mod; ++z) is_square[(z * z) % mod] = true;

  auto reduce = [&](std::int64_t v) {
    const auto m = static_cast<std::int64_t>(mod);
    return static_cast<std::uint64_t>(((v % m) + m) % m);
  };
  const std::uint64_t ca = reduce(a.representative_integer(field));
  const std::uint64_t cb = reduce(b.representative_integer(field));

  // x = 1, y arbitrary.
  for (std::uint64_t y = 0; y < mod; ++y) {
    if (is_square[(ca + cb * ((y * y) % mod)) % mod]) return Sign::plus();
  }
  // x divisible by p, y = 1.
  for (std::uint64_t x = 0; x < mod; x += p) {
    if (is_square[(ca * ((x * x) % mod) + cb) % mod]) return Sign::plus();
  }
  return Sign::minus();
}

Sign hilbert_ext(const QuadExt& ext, ExtClass a, ExtClass b) {
  if (!ext.base().is_dyadic()) return tame_symbol(ext.residue_field_size(), a.bits, b.bits);
  return Sign::from_bit(cached_ext_table(ext).at(a.bits).at(b.bits) < 0 ? 1u : 0u);
}

std::uint64_t represented_classes(const QuadExt& ext, ExtClass c) {
  const std::uint64_t all = (std::uint64_t{1} << ext.class_count()) - 1;
  if (minus_is_square(ext, c)) return all;  // x^2 + c y^2 is a hyperbolic plane

  const LocalField& f = ext.base();
  const ExtElement rep = ext.representative(c);
  const ExtElement one = ext.one();
  std::uint64_t mask = 0;
  auto hit = [&](const ExtElement& value) {
    try {
      mask |= std::uint64_t{1} << ext.classify(value).bits;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientPrecision) throw;
    }
  };
  hit(one);
  hit(rep);
  // The norm group of a quadratic extension has index 2, so the scan stops
  // once half the classes are hit. The grid z = i + j*omega doubles until then.
  const int target = ext.class_count() / 2;
  const ExtElement& omega = ext.integral_generator();
  std::int64_t done = 0;
  for (std::int64_t side = f.is_dyadic() ? 8 : static_cast<std::int64_t>(f.p());
       side <= kMaxGridSide && std::popcount(mask) < target; side *= 2) {
    for (std::int64_t i = 0; i < side; ++i) {
      for (std::int64_t j = 0; j < side; ++j) {
        if ((i == 0 && j == 0) || (i < done && j < done)) continue;
        // Any step can cancel past working precision (z^2 itself does for
        // z = 1 + sqrt(-1)); such grid points are skipped.
        try {
          const ExtElement z = ext.add(ext.from_integers(i, 0),
                                       ext.multiply(ext.from_integers(j, 0), omega));
          const ExtElement z2 = ext.multiply(z, z);
          hit(ext.add(one, ext.multiply(rep, z2)));
          hit(ext.add(rep, z2));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::InsufficientPrecision) throw;
        }
      }
    }
    done = side;
  }
  if (std::popcount(mask) > target)
    throw Error(ErrorCode::SnapFailure, "grid scan hit more than half the classes in " + ext.name());
  if (std::popcount(mask) < target)
    throw Error(ErrorCode::InsufficientPrecision,
                "grid scan reached " + std::to_string(std::popcount(mask)) + " of " +
                    std::to_string(target) + " represented classes in " + ext.name());
  return mask;
}

Sign hilbert_ext_oracle(const QuadExt& ext, ExtClass a, ExtClass b) {
  const std::uint64_t mask = represented_classes(ext, a * b);
  return (mask >> a.bits) & 1u ? Sign::plus() : Sign::minus();
}

std::size_t NormCompatibilityReport::failures() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.pass() ? 0 : 1;
  return n;
}

NormCompatibilityReport check_norm_compatibility(const QuadExt& ext) {
  NormCompatibilityReport report;
  const LocalField& f = ext.base();
  for (int i = 0; i < ext.class_count(); ++i) {
    const ExtClass a{static_cast<unsigned>(i)};
    const SquareClass norm_a = ext.norm_class_of(a);
    for (int j = 0; j < f.class_count(); ++j) {
      const SquareClass b{f.p(), static_cast<unsigned>(j)};
      report.entries.push_back(
          {a, b, hilbert_ext(ext, a, ext.embed_class(b)), hilbert(f, norm_a, b)});
    }
  }
  return report;
}

std::complex<double> WeilIndex::exact() const {
  return std::polar(1.0, std::numbers::pi * label / 4.0);
}

WeilIndex gauss_sum_normalized(std::uint64_t p) {
  if (p == 2) throw Error(ErrorCode::EvenResidueChar, "Gauss sum normalization needs odd p");
  std::complex<double> sum{0.0, 0.0};
  for (std::uint64_t t = 0; t < p; ++t) {
    const double phase = 2.0 * std::numbers::pi * static_cast<double>((t * t) % p) / static_cast<double>(p);
    sum += std::polar(1.0, phase);
  }
  const std::complex<double> eps = sum / std::sqrt(static_cast<double>(p));
  int label = static_cast<int>(std::lround(std::arg(eps) / (std::numbers::pi / 4.0)));
  label = ((label % 8) + 8) % 8;
  WeilIndex w{label, eps};
  if (std::abs(eps - w.exact()) > 1e-6)
    throw Error(ErrorCode::SnapFailure, "Gauss sum for p=" + std::to_string(p) +
                                            " is not an 8th root of unity times sqrt(p)");
  const int expected = p % 4 == 1 ? 0 : 2;
  if (label != expected)
    throw Error(ErrorCode::SnapFailure, "Gauss sum sign disagrees with Gauss's evaluation");
  return w;
}

WeilIndex weil_index(const LocalField& field, SquareClass a) {
  if (field.is_dyadic()) throw Error(ErrorCode::EvenResidueChar, "Weil index needs odd p");
  // gamma(psi_u) = 1 for units and conductor Z_p, so mu_psi(u) = 1 and
  // mu_psi(p u) = chi(u) * eps^-1 with eps = G / sqrt(p).
  if (a.parity() == 0) return WeilIndex{0, {1.0, 0.0}};
  const WeilIndex eps = gauss_sum_normalized(field.p());
  const double chi = (a.bits & 1u) ? -1.0 : 1.0;
  WeilIndex mu{((8 - eps.label) + ((a.bits & 1u) ? 4 : 0)) % 8, chi / eps.witness};
  if (std::abs(mu.witness - mu.exact()) > 1e-9)
    throw Error(ErrorCode::SnapFailure, "Weil index witness drifted from its label");
  return mu;
}

}  // namespace metabranch
