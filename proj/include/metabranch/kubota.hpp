#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "metabranch/padic.hpp"
#include "metabranch/report.hpp"
#include "metabranch/symbols.hpp"

namespace metabranch {

/// [[a, b], [c, d]] over Q_p.
struct Mat2 {
  PadicNumber a, b, c, d;

  static Mat2 identity(const LocalField& f);
  static Mat2 diag(const LocalField& f, const PadicNumber& x, const PadicNumber& y);
  static Mat2 from_integers(const LocalField& f, i128 a, i128 b, i128 c, i128 d);

  Mat2 operator*(const Mat2& o) const;
  PadicNumber det() const;
  /// Adjugate over the determinant.
  Mat2 inverse() const;
  bool agrees_with(const Mat2& o) const;
  bool is_integral() const;
  bool is_upper_triangular() const { return c.is_zero(); }

  nlohmann::ordered_json to_json() const;
};

struct CoverElement {
  Mat2 g;
  Sign sign;
};

/// A twofold cover given by a 2-cocycle on matrices. Kubota is the cocycle of
/// the metaplectic cover of SL2; Borel is (a_g, d_h) on upper-triangular
/// matrices of GL2.
class Cover {
 public:
  enum class Kind { Kubota, Borel };

  Cover(const LocalField& field, Kind kind) : field_(field), kind_(kind) {}

  const LocalField& field() const noexcept { return field_; }
  Sign beta(const Mat2& g, const Mat2& h) const;
  /// beta with the product supplied, for when computing g*h would cancel.
  Sign beta(const Mat2& g, const Mat2& h, const Mat2& gh) const;

  CoverElement lift(const Mat2& g, Sign s = Sign::plus()) const { return {g, s}; }
  CoverElement mul(const CoverElement& x, const CoverElement& y) const;
  /// Product when x.g * y.g is known exactly; the computed product must agree
  /// with it to working precision, and the exact one is kept.
  CoverElement mul(const CoverElement& x, const CoverElement& y, const Mat2& known) const;
  CoverElement inv(const CoverElement& x) const;
  /// x y x^-1 y^-1; for commuting images the result lies over the identity.
  CoverElement commutator(const CoverElement& x, const CoverElement& y) const;

 private:
  LocalField field_;
  Kind kind_;
};

/// (x(gh)/x(g), x(gh)/x(h))_F with x(m) = c if c != 0, else d. Both
/// arguments must have determinant 1.
Sign kubota_beta(const LocalField& field, const Mat2& g, const Mat2& h);
CoverElement cover_mul(const LocalField& field, const CoverElement& x, const CoverElement& y);
CoverElement cover_inv(const LocalField& field, const CoverElement& x);

/// Splitting of the cover over SL2(Z_p), p odd: (c, d)_F when 0 < v(c) < inf,
/// else +1.
Sign kappa(const LocalField& field, const Mat2& k);

struct SampleSpec {
  enum class Kind { SL2Zp, Gamma0, SL2FBounded };
  Kind kind = Kind::SL2Zp;
  /// Gamma0: valuation floor of c. SL2FBounded: entries have valuation in
  /// [-level, level].
  int level = 0;
};

/// A random element of the requested subgroup at working precision.
/// Deterministic in the generator state.
Mat2 sample_sl2(const LocalField& field, const SampleSpec& spec, std::mt19937_64& rng);

struct KubotaWitness {
  std::vector<Mat2> matrices;
  std::string detail;
};

struct KubotaReport {
  std::string field;
  std::string check;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  /// Samples redrawn because a product cancelled past working precision.
  std::int64_t redrawn = 0;
  std::vector<KubotaWitness> failures;

  bool all_pass() const { return failures.empty(); }
  nlohmann::ordered_json to_json() const;
};

/// beta(g,h) beta(gh,k) = beta(g,hk) beta(h,k) on random triples.
KubotaReport check_cocycle_identity(const LocalField& field, std::int64_t trials, std::uint64_t seed);
/// beta(k1, k2) = kappa(k1 k2) kappa(k1) kappa(k2) on random pairs in SL2(Z_p).
KubotaReport check_kappa_homomorphism(const LocalField& field, std::int64_t trials, std::uint64_t seed);
/// With g = diag(p^n, p^-n) and k in Gamma0(p^2n), the cover element
/// s(k)^-1 g~^-1 s(g k g^-1) g~ is (1, +1), for both lifts g~ = (g, +-1).
KubotaReport invariant_splitting_check(const LocalField& field, int level, std::int64_t trials,
                                       std::uint64_t seed);
/// On upper-triangular SL2 pairs with class-swept diagonals and off-diagonal
/// entries from {0, 1, p, u0/p}: kubota_beta = (a, d)_F.
KubotaReport check_borel_restriction(const LocalField& field);
/// Commutators of lifts of GL2 diagonals under the Borel cocycle equal
/// (a,d)(c,b); lifts of SL2 diagonals commute under the Kubota cocycle.
KubotaReport check_torus_commutator(const LocalField& field);
/// mu(a) mu(b) / mu(ab) = beta(diag(a,1/a), diag(b,1/b)) = (a, b)_F on all
/// class pairs, so (diag(a,1/a), e) -> e mu(a) is a genuine character.
KubotaReport check_weil_genuine_character(const LocalField& field);

/// Fixed default seed of every randomized suite.
inline constexpr std::uint64_t kDefaultSeed = 0xC0C7C1E;

}  // namespace metabranch
