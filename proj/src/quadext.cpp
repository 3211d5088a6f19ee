#include "metabranch/quadext.hpp"

#include <optional>

#include "metabranch/error.hpp"

namespace metabranch {

namespace {

std::string element_name(std::int64_t x, std::int64_t y, const std::string& root) {
  if (y == 0) return std::to_string(x);
  std::string s;
  if (x != 0) s = std::to_string(x) + (y > 0 ? "+" : "");
  if (y == -1)
    s += "-";
  else if (y != 1)
    s += std::to_string(y) + "*";
  return s + root;
}

std::string factor_name(const std::string& name) {
  if (name.find_first_of("+-", 1) != std::string::npos) return "(" + name + ")";
  return name;
}

// Spanning set for E^x/E^x2 over Q_2, as integer pairs (x, y) meaning
// x + y*sqrt(d). Its classes generate the 16-element group for all seven d.
constexpr std::int64_t kDyadicSpan[][2] = {{-1, 0}, {2, 0}, {5, 0},  {0, 1},  {1, 1},  {1, 2},
                                           {3, 1},  {1, 4}, {2, 1},  {5, 2},  {1, -1}, {3, 2},
                                           {1, 3},  {7, 1}, {3, 4}};

}  // namespace

QuadExt QuadExt::make(const LocalField& base, SquareClass d) {
  if (d.p != base.p()) throw Error(ErrorCode::InvalidField, "discriminant from another field");
  if (d.is_trivial()) throw Error(ErrorCode::TrivialDiscriminant, "d must not be a square");
  return QuadExt(base, d);
}

QuadExt::QuadExt(const LocalField& base, SquareClass d)
    : base_(base),
      d_(d),
      d_value_(d.representative(base)),
      uniformizer_{PadicNumber::zero(base), PadicNumber::zero(base)},
      integral_generator_{PadicNumber::zero(base), PadicNumber::from_integer(base, 1)} {
  if (base_.is_dyadic()) {
    ramified_ = d_.bits != 4;  // only the class of 5 is unramified over Q_2
    if (!ramified_) {
      uniformizer_ = from_integers(2, 0);
      const PadicNumber half = PadicNumber::from_rational(base_, 1, 2);
      integral_generator_ = {half, half};
    } else if (d_.parity() == 1) {
      uniformizer_ = from_integers(0, 1);
    } else {
      uniformizer_ = from_integers(1, 1);  // Nm(1 + sqrt(d)) = 1 - d has valuation 1
    }
  } else {
    ramified_ = d_.parity() == 1;
    uniformizer_ = ramified_ ? from_integers(0, 1)
                             : from_integers(static_cast<i128>(base_.p()), 0);
  }
  build_transversal();
}

std::string QuadExt::name() const {
  return base_.name() + "(sqrt(" + std::to_string(d_.representative_integer(base_)) + "))";
}

ExtElement QuadExt::from_integers(i128 x, i128 y) const {
  return {PadicNumber::from_integer(base_, x), PadicNumber::from_integer(base_, y)};
}

ExtElement QuadExt::add(const ExtElement& a, const ExtElement& b) const {
  return {a.x + b.x, a.y + b.y};
}

ExtElement QuadExt::multiply(const ExtElement& a, const ExtElement& b) const {
  return {a.x * b.x + d_value_ * a.y * b.y, a.x * b.y + a.y * b.x};
}

ExtElement QuadExt::conjugate(const ExtElement& a) const { return {a.x, -a.y}; }

PadicNumber QuadExt::norm(const ExtElement& a) const {
  return a.x * a.x - d_value_ * a.y * a.y;
}

ExtElement QuadExt::inverse(const ExtElement& a) const {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "inverse of zero in " + name());
  const PadicNumber n_inv = norm(a).inverse();
  return {a.x * n_inv, -(a.y * n_inv)};
}

std::int64_t QuadExt::valuation(const ExtElement& a) const {
  if (a.is_zero()) return PadicNumber::kInfinity;
  const std::int64_t v = norm(a).valuation();
  return ramified_ ? v : v / 2;
}

bool QuadExt::is_square(const ExtElement& a) const {
  if (a.is_zero()) return true;
  if (a.y.is_zero()) {
    const SquareClass c = metabranch::classify(base_, a.x);
    return c.is_trivial() || c == d_;
  }
  const PadicNumber n = norm(a);
  if (!n.is_square()) return false;
  const PadicNumber root = n.sqrt();
  const PadicNumber half = PadicNumber::from_rational(base_, 1, 2);
  // (x + N)/2 * (x - N)/2 = d*y^2/4, so either root works; take the one
  // that survives cancellation with more digits.
  std::optional<PadicNumber> best;
  for (const PadicNumber& s : {root, -root}) {
    try {
      PadicNumber t = (a.x + s) * half;
      if (!best || t.precision() > best->precision()) best = t;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientPrecision) throw;
    }
  }
  if (!best) throw Error(ErrorCode::InsufficientPrecision, "square test cancelled both roots");
  const SquareClass c = metabranch::classify(base_, *best);
  return c.is_trivial() || c == d_;
}

bool QuadExt::is_square_quotient(const ExtElement& a, const ExtElement& b_inv) const {
  // The pair model cancels when a/b is close to a pure multiple of 1 or
  // sqrt(d). Multiplying by a non-scalar square keeps the class and moves the
  // coordinates off that line.
  static constexpr std::int64_t kShifts[][2] = {{1, 0}, {1, 1}, {1, 2}, {2, 1}, {3, 2}};
  for (const auto& st : kShifts) {
    try {
      const ExtElement s = from_integers(st[0], st[1]);
      return is_square(multiply(multiply(a, multiply(s, s)), b_inv));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientPrecision) throw;
    }
  }
  throw Error(ErrorCode::InsufficientPrecision, "square test cancelled for every shift in " + name());
}

ExtClass QuadExt::classify_odd(const ExtElement& a) const {
  const std::uint64_t p = base_.p();
  if (!ramified_) {
    // Unit residues live in F_{p^2}; u is a square there iff its norm is a
    // square in F_p.
    const PadicNumber n = norm(a);
    const std::int64_t v = n.valuation() / 2;
    const unsigned nonsquare = legendre(n.unit_mod_power(1), p) == -1 ? 1u : 0u;
    return {nonsquare | (static_cast<unsigned>(v & 1) << 1)};
  }
  // Ramified: pi = sqrt(d), pi^2 = d = p * u' with u' in {1, u0}.
  const u128 d_unit = d_value_.unit_mod_power(1);
  const bool even = a.y.is_zero() || (!a.x.is_zero() && 2 * a.x.valuation() < 2 * a.y.valuation() + 1);
  const PadicNumber& lead = even ? a.x : a.y;
  const std::int64_t k = lead.valuation();
  // residue of a / pi^(2k) (or a / pi^(2k+1)) is unit(lead) * u'^(-k); the
  // square class of u'^(-k) equals that of u'^k.
  u128 residue = lead.unit_mod_power(1);
  if (k & 1) residue = mulmod(residue, d_unit, p);
  const unsigned nonsquare = legendre(residue, p) == -1 ? 1u : 0u;
  return {nonsquare | (even ? 0u : 2u)};
}

ExtClass QuadExt::classify(const ExtElement& a) const {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "square class of zero in " + name());
  if (!base_.is_dyadic()) return classify_odd(a);
  return classify_by_transversal(a);
}

ExtClass QuadExt::classify_by_transversal(const ExtElement& a) const {
  if (a.is_zero()) throw Error(ErrorCode::ZeroInput, "square class of zero in " + name());
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    if (is_square_quotient(a, rep_inverses_[i])) return {static_cast<unsigned>(i)};
  }
  throw Error(ErrorCode::InsufficientPrecision, "no transversal element matches in " + name());
}

void QuadExt::build_transversal() {
  const std::string root = "sqrt(" + std::to_string(d_.representative_integer(base_)) + ")";
  auto push_generator = [&](const ExtElement& g, const std::string& g_name) {
    const std::size_t n = reps_.size();
    for (std::size_t i = 0; i < n; ++i) reps_.push_back(multiply(reps_[i], g));
    generators_.push_back(g);
    generator_names_.push_back(g_name);
  };
  reps_ = {one()};

  if (!base_.is_dyadic()) {
    if (ramified_) {
      const auto u0 = static_cast<std::int64_t>(base_.nonresidue());
      push_generator(from_integers(u0, 0), std::to_string(u0));
      push_generator(from_integers(0, 1), root);
    } else {
      // Non-square unit of E: a + sqrt(u0) with non-residue norm a^2 - u0.
      const auto u0 = static_cast<std::int64_t>(base_.nonresidue());
      std::int64_t a = 0;
      const auto p = static_cast<std::int64_t>(base_.p());
      while (legendre(static_cast<u128>(((a * a - u0) % p + p) % p), base_.p()) != -1) ++a;
      push_generator(from_integers(a, 1), element_name(a, 1, root));
      push_generator(from_integers(p, 0), std::to_string(p));
    }
  } else {
    for (const auto& xy : kDyadicSpan) {
      if (reps_.size() == 16) break;
      const ExtElement s = from_integers(xy[0], xy[1]);
      bool known = false;
      for (const ExtElement& r : reps_) {
        if (is_square_quotient(s, inverse(r))) {
          known = true;
          break;
        }
      }
      if (!known) push_generator(s, element_name(xy[0], xy[1], root));
    }
    if (reps_.size() != 16)
      throw Error(ErrorCode::InsufficientPrecision, "spanning set did not reach 16 classes in " + name());
  }
  rep_inverses_.clear();
  for (const ExtElement& r : reps_) rep_inverses_.push_back(inverse(r));
}

std::string QuadExt::label(ExtClass c) const {
  if (c.bits == 0) return "1";
  std::string s;
  for (std::size_t i = 0; i < generator_names_.size(); ++i) {
    if (!(c.bits & (1u << i))) continue;
    if (!s.empty()) s += "*";
    s += factor_name(generator_names_[i]);
  }
  return s;
}

ExtClass QuadExt::embed_class(SquareClass b) const {
  return classify(embed(b.representative(base_)));
}

SquareClass QuadExt::norm_class_of(ExtClass c) const {
  return metabranch::classify(base_, norm(representative(c)));
}

SquareClass norm_class(const QuadExt& ext, const ExtElement& e) {
  if (e.is_zero()) throw Error(ErrorCode::ZeroInput, "norm class of zero");
  return classify(ext.base(), ext.norm(e));
}

std::vector<QuadExt> all_quadratic_extensions(const LocalField& field) {
  std::vector<QuadExt> out;
  for (int bits = 1; bits < field.class_count(); ++bits)
    out.push_back(QuadExt::make(field, SquareClass{field.p(), static_cast<unsigned>(bits)}));
  return out;
}

}  // namespace metabranch
