#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metabranch/padic.hpp"

namespace metabranch {

/// x + y*sqrt(d) in the pair model.
struct ExtElement {
  PadicNumber x;
  PadicNumber y;

  bool is_zero() const noexcept { return x.is_zero() && y.is_zero(); }
};

/// Coset of E^x2 in E^x as F2-coordinates over QuadExt::generators().
struct ExtClass {
  unsigned bits = 0;

  bool is_trivial() const noexcept { return bits == 0; }
  ExtClass operator*(ExtClass other) const { return {bits ^ other.bits}; }
  friend bool operator==(ExtClass a, ExtClass b) { return a.bits == b.bits; }
  friend bool operator!=(ExtClass a, ExtClass b) { return a.bits != b.bits; }
};

/// E = F(sqrt(d)) for a non-trivial square class d of F = Q_p.
class QuadExt {
 public:
  static QuadExt make(const LocalField& base, SquareClass d);

  const LocalField& base() const noexcept { return base_; }
  SquareClass discriminant() const noexcept { return d_; }
  const PadicNumber& d_value() const noexcept { return d_value_; }
  bool ramified() const noexcept { return ramified_; }
  std::uint64_t residue_field_size() const noexcept { return ramified_ ? base_.p() : base_.p() * base_.p(); }
  const ExtElement& uniformizer() const noexcept { return uniformizer_; }
  /// An element generating the ring of integers over Z_p together with 1.
  const ExtElement& integral_generator() const noexcept { return integral_generator_; }
  std::string name() const;

  ExtElement element(const PadicNumber& x, const PadicNumber& y) const { return {x, y}; }
  ExtElement from_integers(i128 x, i128 y) const;
  ExtElement embed(const PadicNumber& a) const { return {a, PadicNumber::zero(base_)}; }
  ExtElement one() const { return from_integers(1, 0); }

  ExtElement add(const ExtElement& a, const ExtElement& b) const;
  ExtElement multiply(const ExtElement& a, const ExtElement& b) const;
  ExtElement conjugate(const ExtElement& a) const;
  ExtElement inverse(const ExtElement& a) const;
  ExtElement divide(const ExtElement& a, const ExtElement& b) const {
    return multiply(a, inverse(b));
  }
  PadicNumber norm(const ExtElement& a) const;
  bool agrees_with(const ExtElement& a, const ExtElement& b) const {
    return a.x.agrees_with(b.x) && a.y.agrees_with(b.y);
  }

  /// Normalized valuation of E (the uniformizer has valuation 1).
  std::int64_t valuation(const ExtElement& a) const;

  /// Squareness test through the norm: a is a square iff Nm(a) = N^2 in F
  /// and (x + N)/2 lies in F^x2 or d*F^x2.
  bool is_square(const ExtElement& a) const;

  int class_rank() const noexcept { return static_cast<int>(generators_.size()); }
  int class_count() const noexcept { return 1 << class_rank(); }
  const std::vector<ExtElement>& generators() const noexcept { return generators_; }

  /// Square class of a nonzero element. Odd p reads it off the valuation
  /// parity and residue character; p = 2 scans the cached transversal.
  ExtClass classify(const ExtElement& a) const;
  /// Transversal scan, valid for every p; used to cross-check classify.
  ExtClass classify_by_transversal(const ExtElement& a) const;

  const ExtElement& representative(ExtClass c) const { return reps_.at(c.bits); }
  std::string label(ExtClass c) const;
  ExtClass embed_class(SquareClass b) const;
  SquareClass norm_class_of(ExtClass c) const;

 private:
  QuadExt(const LocalField& base, SquareClass d);
  void build_transversal();
  ExtClass classify_odd(const ExtElement& a) const;
  bool is_square_quotient(const ExtElement& a, const ExtElement& b_inv) const;

  LocalField base_;
  SquareClass d_;
  PadicNumber d_value_;
  bool ramified_ = false;
  ExtElement uniformizer_;
  ExtElement integral_generator_;
  std::vector<ExtElement> generators_;
  std::vector<std::string> generator_names_;
  std::vector<ExtElement> reps_;
  std::vector<ExtElement> rep_inverses_;
};

/// Square class in F of Nm(e) = x^2 - d*y^2.
SquareClass norm_class(const QuadExt& ext, const ExtElement& e);

/// All quadratic extensions of the field, one per non-trivial class of d.
std::vector<QuadExt> all_quadratic_extensions(const LocalField& field);

}  // namespace metabranch
