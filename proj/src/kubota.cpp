#include "metabranch/kubota.hpp"

#include <cmath>
#include <complex>

#include "metabranch/error.hpp"

namespace metabranch {

namespace {

constexpr int kMaxRedraws = 1000;

bool is_precision_error(const Error& e) { return e.code() == ErrorCode::InsufficientPrecision; }

// Entry of a product checked against the exact value expected there. A sum
// that cancels is consistent only with an exact zero.
bool entry_matches(const PadicNumber& x1, const PadicNumber& y1, const PadicNumber& x2, const PadicNumber& y2,
                   const PadicNumber& known) {
  try {
    return (x1 * y1 + x2 * y2).agrees_with(known);
  } catch (const Error& e) {
    if (!is_precision_error(e)) throw;
    return known.is_zero();
  }
}

PadicNumber random_integral(const LocalField& f, std::mt19937_64& rng, bool allow_zero) {
  if (allow_zero && rng() % 16 == 0) return PadicNumber::zero(f);
  const u128 modulus = ipow(f.p(), f.precision());
  u128 u = ((static_cast<u128>(rng()) << 64) | rng()) % modulus;
  if (u == 0) u = 1;
  return PadicNumber::from_integer(f, static_cast<i128>(u));
}

PadicNumber random_unit(const LocalField& f, std::mt19937_64& rng) {
  const u128 modulus = ipow(f.p(), f.precision());
  u128 u = ((static_cast<u128>(rng()) << 64) | rng()) % modulus;
  if (u % f.p() == 0) u += 1;
  return PadicNumber::from_parts(f, 0, u);
}

PadicNumber random_bounded(const LocalField& f, std::mt19937_64& rng, int level, bool allow_zero) {
  if (allow_zero && rng() % 16 == 0) return PadicNumber::zero(f);
  const auto v = static_cast<std::int64_t>(rng() % (2 * level + 1)) - level;
  return random_unit(f, rng) * PadicNumber::power_of_p(f, v);
}

void require_det_one(const LocalField& f, const Mat2& m) {
  if (!m.det().agrees_with(PadicNumber::from_integer(f, 1)))
    throw Error(ErrorCode::NotSpecialLinear, "determinant is not 1");
}

const char* sign_name(Sign s) { return s.is_plus() ? "+1" : "-1"; }

}  // namespace

Mat2 Mat2::identity(const LocalField& f) { return from_integers(f, 1, 0, 0, 1); }

Mat2 Mat2::diag(const LocalField& f, const PadicNumber& x, const PadicNumber& y) {
  return {x, PadicNumber::zero(f), PadicNumber::zero(f), y};
}

Mat2 Mat2::from_integers(const LocalField& f, i128 a, i128 b, i128 c, i128 d) {
  return {PadicNumber::from_integer(f, a), PadicNumber::from_integer(f, b), PadicNumber::from_integer(f, c),
          PadicNumber::from_integer(f, d)};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

PadicNumber Mat2::det() const { return a * d - b * c; }

Mat2 Mat2::inverse() const {
  const PadicNumber inv = det().inverse();
  return {d * inv, -(b * inv), -(c * inv), a * inv};
}

bool Mat2::agrees_with(const Mat2& o) const {
  return a.agrees_with(o.a) && b.agrees_with(o.b) && c.agrees_with(o.c) && d.agrees_with(o.d);
}

bool Mat2::is_integral() const { return a.is_integral() && b.is_integral() && c.is_integral() && d.is_integral(); }

nlohmann::ordered_json Mat2::to_json() const {
  return {{"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}, {"d", d.to_string()}};
}

Sign Cover::beta(const Mat2& g, const Mat2& h) const { return beta(g, h, g * h); }

Sign Cover::beta(const Mat2& g, const Mat2& h, const Mat2& gh) const {
  if (kind_ == Kind::Borel) {
    if (!g.is_upper_triangular() || !h.is_upper_triangular())
      throw Error(ErrorCode::NotTriangular, "Borel cocycle needs upper-triangular matrices");
    return hilbert(field_, g.a, h.d);
  }
  auto x = [](const Mat2& m) -> const PadicNumber& { return m.c.is_zero() ? m.d : m.c; };
  const PadicNumber& xgh = x(gh);
  return hilbert(field_, xgh / x(g), xgh / x(h));
}

CoverElement Cover::mul(const CoverElement& x, const CoverElement& y) const {
  const Mat2 gh = x.g * y.g;
  return {gh, x.sign * y.sign * beta(x.g, y.g, gh)};
}

CoverElement Cover::mul(const CoverElement& x, const CoverElement& y, const Mat2& known) const {
  const Mat2& g = x.g;
  const Mat2& h = y.g;
  const bool ok = entry_matches(g.a, h.a, g.b, h.c, known.a) && entry_matches(g.a, h.b, g.b, h.d, known.b) &&
                  entry_matches(g.c, h.a, g.d, h.c, known.c) && entry_matches(g.c, h.b, g.d, h.d, known.d);
  if (!ok) throw Error(ErrorCode::SnapFailure, "product disagrees with the supplied exact value");
  return {known, x.sign * y.sign * beta(g, h, known)};
}

CoverElement Cover::inv(const CoverElement& x) const {
  const Mat2 ginv = x.g.inverse();
  return {ginv, x.sign * beta(x.g, ginv, Mat2::identity(field_))};
}

CoverElement Cover::commutator(const CoverElement& x, const CoverElement& y) const {
  return mul(mul(mul(x, y), inv(x)), inv(y));
}

Sign kubota_beta(const LocalField& field, const Mat2& g, const Mat2& h) {
  require_det_one(field, g);
  require_det_one(field, h);
  return Cover(field, Cover::Kind::Kubota).beta(g, h);
}

CoverElement cover_mul(const LocalField& field, const CoverElement& x, const CoverElement& y) {
  return Cover(field, Cover::Kind::Kubota).mul(x, y);
}

CoverElement cover_inv(const LocalField& field, const CoverElement& x) {
  return Cover(field, Cover::Kind::Kubota).inv(x);
}

Sign kappa(const LocalField& field, const Mat2& k) {
  if (field.is_dyadic()) throw Error(ErrorCode::EvenResidueChar, "the splitting needs odd p");
  if (!k.is_integral()) throw Error(ErrorCode::NotIntegral, "matrix is not in SL2(Z_p)");
  require_det_one(field, k);
  if (k.c.is_zero() || k.c.valuation() == 0) return Sign::plus();
  return hilbert(field, k.c, k.d);
}

Mat2 sample_sl2(const LocalField& field, const SampleSpec& spec, std::mt19937_64& rng) {
  const PadicNumber one = PadicNumber::from_integer(field, 1);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    try {
      PadicNumber a = PadicNumber::zero(field), b = a, c = a;
      switch (spec.kind) {
        case SampleSpec::Kind::SL2Zp:
          a = random_integral(field, rng, false);
          if (!a.is_unit()) continue;
          b = random_integral(field, rng, true);
          c = random_integral(field, rng, true);
          break;
        case SampleSpec::Kind::Gamma0:
          a = random_unit(field, rng);
          b = random_integral(field, rng, true);
          c = random_integral(field, rng, true) * PadicNumber::power_of_p(field, spec.level);
          break;
        case SampleSpec::Kind::SL2FBounded:
          a = random_bounded(field, rng, spec.level, false);
          b = random_bounded(field, rng, spec.level, true);
          c = random_bounded(field, rng, spec.level, true);
          break;
      }
      const PadicNumber d = (one + b * c) / a;
      Mat2 m{a, b, c, d};
      // Left multiplication by [[0,-1],[1,0]] reaches matrices whose upper
      // left entry is not a unit.
      if (spec.kind != SampleSpec::Kind::Gamma0 && rng() % 4 == 0) m = {-c, -d, a, b};
      return m;
    } catch (const Error& e) {
      if (!is_precision_error(e) && e.code() != ErrorCode::ZeroInput) throw;
    }
  }
  throw Error(ErrorCode::InsufficientPrecision, "sampler kept cancelling");
}

nlohmann::ordered_json KubotaReport::to_json() const {
  nlohmann::ordered_json j;
  j["field"] = field;
  j["check"] = check;
  j["trials"] = trials;
  j["seed"] = seed;
  j["redrawn"] = redrawn;
  j["failures"] = nlohmann::ordered_json::array();
  for (const KubotaWitness& w : failures) {
    nlohmann::ordered_json entry;
    entry["matrices"] = nlohmann::ordered_json::array();
    for (const Mat2& m : w.matrices) entry["matrices"].push_back(m.to_json());
    entry["detail"] = w.detail;
    j["failures"].push_back(entry);
  }
  return j;
}

namespace {

KubotaReport start(const LocalField& field, const std::string& check, std::int64_t trials, std::uint64_t seed) {
  KubotaReport r;
  r.field = field.name();
  r.check = check;
  r.trials = trials;
  r.seed = seed;
  return r;
}

// Runs trial() until `trials` of them complete; a trial that hits
// cancellation is redrawn and counted.
template <typename Trial>
void run_trials(KubotaReport& r, Trial trial) {
  std::int64_t done = 0;
  while (done < r.trials) {
    try {
      trial();
      ++done;
    } catch (const Error& e) {
      if (!is_precision_error(e)) throw;
      if (++r.redrawn > r.trials + kMaxRedraws)
        throw Error(ErrorCode::InsufficientPrecision, r.check + ": too many trials lost to cancellation");
    }
  }
}

void require_odd(const LocalField& field) {
  if (field.is_dyadic()) throw Error(ErrorCode::EvenResidueChar, "Kubota suites need odd p");
}

}  // namespace

KubotaReport check_cocycle_identity(const LocalField& field, std::int64_t trials, std::uint64_t seed) {
  require_odd(field);
  KubotaReport r = start(field, "cocycle", trials, seed);
  const Cover cover(field, Cover::Kind::Kubota);
  std::mt19937_64 rng(seed);
  const SampleSpec spec{SampleSpec::Kind::SL2FBounded, 2};
  run_trials(r, [&] {
    const Mat2 g = sample_sl2(field, spec, rng), h = sample_sl2(field, spec, rng), k = sample_sl2(field, spec, rng);
    const Mat2 gh = g * h, hk = h * k;
    const Sign lhs = cover.beta(g, h, gh) * cover.beta(gh, k, gh * k);
    const Sign rhs = cover.beta(g, hk, g * hk) * cover.beta(h, k, hk);
    if (lhs != rhs)
      r.failures.push_back({{g, h, k}, std::string("lhs ") + sign_name(lhs) + ", rhs " + sign_name(rhs)});
  });
  return r;
}

KubotaReport check_kappa_homomorphism(const LocalField& field, std::int64_t trials, std::uint64_t seed) {
  require_odd(field);
  KubotaReport r = start(field, "kappa-homomorphism", trials, seed);
  const Cover cover(field, Cover::Kind::Kubota);
  std::mt19937_64 rng(seed);
  const SampleSpec spec{SampleSpec::Kind::SL2Zp, 0};
  run_trials(r, [&] {
    const Mat2 k1 = sample_sl2(field, spec, rng), k2 = sample_sl2(field, spec, rng);
    const Mat2 k12 = k1 * k2;
    const Sign lhs = cover.beta(k1, k2, k12);
    const Sign rhs = kappa(field, k12) * kappa(field, k1) * kappa(field, k2);
    if (lhs != rhs)
      r.failures.push_back({{k1, k2}, std::string("beta ") + sign_name(lhs) + ", kappa product " + sign_name(rhs)});
  });
  return r;
}

KubotaReport invariant_splitting_check(const LocalField& field, int level, std::int64_t trials,
                                       std::uint64_t seed) {
  require_odd(field);
  if (level < 0) throw Error(ErrorCode::NotIntegral, "level must be non-negative");
  KubotaReport r = start(field, "invariant-splitting(n=" + std::to_string(level) + ")", trials, seed);
  const Cover cover(field, Cover::Kind::Kubota);
  std::mt19937_64 rng(seed);
  const PadicNumber t = PadicNumber::power_of_p(field, level);
  const Mat2 g = Mat2::diag(field, t, t.inverse());
  const Mat2 g_inv = g.inverse();
  const Mat2 identity = Mat2::identity(field);
  const SampleSpec spec{SampleSpec::Kind::Gamma0, 2 * level};
  std::int64_t index = 0;
  run_trials(r, [&] {
    // Every eighth sample is diagonal.
    Mat2 k = sample_sl2(field, spec, rng);
    if (index++ % 8 == 0) k = Mat2::diag(field, k.a, k.a.inverse());
    const Mat2 conj = g * k * g_inv;
    if (!conj.is_integral()) {
      r.failures.push_back({{k}, "g k g^-1 left SL2(Z_p)"});
      return;
    }
    const CoverElement s_k{k, kappa(field, k)};
    const CoverElement s_conj{conj, kappa(field, conj)};
    for (Sign lift : {Sign::plus(), Sign::minus()}) {
      const CoverElement g_lift{g, lift};
      const CoverElement x = cover.mul(cover.inv(g_lift), s_conj);
      const CoverElement y = cover.mul(x, g_lift, k);
      const CoverElement z = cover.mul(cover.inv(s_k), y, identity);
      if (!z.sign.is_plus())
        r.failures.push_back({{k}, std::string("sign -1 with lift ") + sign_name(lift)});
    }
  });
  return r;
}

KubotaReport check_borel_restriction(const LocalField& field) {
  require_odd(field);
  const int count = field.class_count();
  const std::vector<PadicNumber> off = {PadicNumber::zero(field), PadicNumber::from_integer(field, 1),
                                        PadicNumber::from_integer(field, static_cast<i128>(field.p())),
                                        PadicNumber::from_rational(field, static_cast<i128>(field.nonresidue()),
                                                                   static_cast<i128>(field.p()))};
  KubotaReport r = start(field, "borel-restriction", static_cast<std::int64_t>(count * count * off.size() * off.size()), 0);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      const PadicNumber a = SquareClass{field.p(), static_cast<unsigned>(i)}.representative(field);
      const PadicNumber c = SquareClass{field.p(), static_cast<unsigned>(j)}.representative(field);
      for (const PadicNumber& x : off)
        for (const PadicNumber& y : off) {
          const Mat2 g{a, x, PadicNumber::zero(field), a.inverse()};
          const Mat2 h{c, y, PadicNumber::zero(field), c.inverse()};
          const Sign beta = kubota_beta(field, g, h);
          const Sign expected = hilbert(field, g.a, h.d);
          if (beta != expected)
            r.failures.push_back({{g, h}, std::string("beta ") + sign_name(beta) + ", (a,d) " + sign_name(expected)});
        }
    }
  return r;
}

KubotaReport check_torus_commutator(const LocalField& field) {
  require_odd(field);
  const int count = field.class_count();
  std::vector<PadicNumber> reps;
  for (int i = 0; i < count; ++i) reps.push_back(SquareClass{field.p(), static_cast<unsigned>(i)}.representative(field));
  KubotaReport r = start(field, "torus-commutator", static_cast<std::int64_t>(count) * count * count * count * 4 + count * count, 0);
  const Cover borel(field, Cover::Kind::Borel);
  const Cover kubota(field, Cover::Kind::Kubota);
  for (const PadicNumber& a : reps)
    for (const PadicNumber& b : reps)
      for (const PadicNumber& c : reps)
        for (const PadicNumber& d : reps) {
          const Mat2 ma = Mat2::diag(field, a, b), mb = Mat2::diag(field, c, d);
          const Sign expected = hilbert(field, a, d) * hilbert(field, c, b);
          for (Sign s1 : {Sign::plus(), Sign::minus()})
            for (Sign s2 : {Sign::plus(), Sign::minus()}) {
              const CoverElement comm = borel.commutator({ma, s1}, {mb, s2});
              if (!comm.g.agrees_with(Mat2::identity(field)) || comm.sign != expected)
                r.failures.push_back({{ma, mb}, std::string("commutator ") + sign_name(comm.sign) + ", (a,d)(c,b) " +
                                                    sign_name(expected)});
            }
        }
  for (const PadicNumber& a : reps)
    for (const PadicNumber& c : reps) {
      const Mat2 ma = Mat2::diag(field, a, a.inverse()), mc = Mat2::diag(field, c, c.inverse());
      const CoverElement comm = kubota.commutator({ma, Sign::plus()}, {mc, Sign::plus()});
      if (!comm.sign.is_plus()) r.failures.push_back({{ma, mc}, "SL2 torus lifts do not commute"});
    }
  return r;
}

KubotaReport check_weil_genuine_character(const LocalField& field) {
  require_odd(field);
  const int count = field.class_count();
  KubotaReport r = start(field, "weil-genuine-character", static_cast<std::int64_t>(count) * count, 0);
  const Cover kubota(field, Cover::Kind::Kubota);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      const SquareClass ca{field.p(), static_cast<unsigned>(i)}, cb{field.p(), static_cast<unsigned>(j)};
      const PadicNumber a = ca.representative(field), b = cb.representative(field);
      const WeilIndex mu_a = weil_index(field, ca), mu_b = weil_index(field, cb);
      const WeilIndex mu_ab = weil_index(field, ca * cb);
      const Sign symbol = hilbert(field, ca, cb);
      const Mat2 ta = Mat2::diag(field, a, a.inverse()), tb = Mat2::diag(field, b, b.inverse());
      std::string problem;
      if (!(mu_a * mu_b == mu_ab * symbol)) problem += "labels break mu(a)mu(b) = (a,b)mu(ab); ";
      if (std::abs(mu_a.witness * mu_b.witness - mu_ab.witness * static_cast<double>(symbol.value())) > 1e-9)
        problem += "floating witnesses disagree; ";
      // chi(x) chi(y) = chi(xy) for chi(diag(a,1/a), e) = e mu(a).
      const CoverElement xy = kubota.mul({ta, Sign::plus()}, {tb, Sign::plus()});
      const WeilIndex chi_xy = weil_index(field, classify(field, xy.g.a)) * xy.sign;
      if (!(chi_xy == mu_a * mu_b)) problem += "character is not multiplicative on the cover; ";
      if (kubota.beta(ta, tb) != symbol) problem += "beta on the torus differs from (a,b); ";
      if (!problem.empty()) r.failures.push_back({{ta, tb}, problem});
    }
  return r;
}

}  // namespace metabranch
