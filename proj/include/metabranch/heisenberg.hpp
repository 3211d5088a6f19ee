#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace metabranch {

/// Exact character value a + b*i.
struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  GaussInt operator+(GaussInt o) const { return {re + o.re, im + o.im}; }
  GaussInt operator-(GaussInt o) const { return {re - o.re, im - o.im}; }
  GaussInt operator-() const { return {-re, -im}; }
  GaussInt operator*(GaussInt o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  GaussInt conj() const { return {re, -im}; }
  GaussInt& operator+=(GaussInt o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  friend bool operator==(GaussInt a, GaussInt b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(GaussInt a, GaussInt b) { return !(a == b); }

  /// i^k for any integer k.
  static GaussInt i_pow(int k);
  std::string to_string() const;
};

/// F2^n with a label per basis vector; vectors are bit masks.
struct F2Space {
  int dim = 0;
  std::vector<std::string> labels;

  static F2Space numbered(int dim);
  std::uint32_t size() const { return std::uint32_t{1} << dim; }
};

/// B(x, y) = x^T M y over F2 with M symmetric and zero on the diagonal.
class AltForm {
 public:
  /// rows[i] is row i of M as a bit mask. Throws NotAlternating.
  static AltForm from_rows(int dim, std::vector<std::uint32_t> rows);
  static AltForm zero(int dim) { return from_rows(dim, std::vector<std::uint32_t>(dim, 0)); }
  /// The standard symplectic form on F2^(2k): e_i pairs with e_(i+k).
  static AltForm symplectic(int half_dim);
  static AltForm random(int dim, std::mt19937_64& rng);

  int dim() const noexcept { return dim_; }
  const std::vector<std::uint32_t>& rows() const noexcept { return rows_; }
  unsigned operator()(std::uint32_t x, std::uint32_t y) const;
  /// {w : B(v, w) = 0} membership test mask: bit set where B(v, e_i) = 1.
  std::uint32_t pairing_mask(std::uint32_t v) const;
  /// Form in a new basis: entry (i, j) is B(P e_i, P e_j) with columns[i] = P e_i.
  AltForm change_basis(const std::vector<std::uint32_t>& columns) const;

 private:
  AltForm(int dim, std::vector<std::uint32_t> rows) : dim_(dim), rows_(std::move(rows)) {}
  int dim_;
  std::vector<std::uint32_t> rows_;
};

/// Subspace of F2^n held as a reduced row-echelon basis, so equal subspaces
/// have equal bases.
class Subspace {
 public:
  Subspace() = default;
  static Subspace span(int ambient_dim, const std::vector<std::uint32_t>& vectors);

  int ambient_dim() const noexcept { return ambient_; }
  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<std::uint32_t>& basis() const noexcept { return basis_; }
  bool contains(std::uint32_t v) const;
  /// Reduces v against the basis; zero iff v is in the subspace.
  std::uint32_t reduce(std::uint32_t v) const;
  std::vector<std::uint32_t> elements() const;
  /// Basis of a complement: standard vectors off the pivot positions.
  std::vector<std::uint32_t> complement_basis() const;
  Subspace with(std::uint32_t v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator<(const Subspace& a, const Subspace& b) { return a.basis_ < b.basis_; }

 private:
  int ambient_ = 0;
  std::vector<std::uint32_t> basis_;  // sorted descending by leading bit
};

/// Character of a finite group as values indexed by element code.
using ClassFunction = std::vector<GaussInt>;

/// Central extension of F2^n by {+1, -1} with the product
/// (v, e)(w, f) = (v + w, e f (-1)^(v^T U w)). Elements are encoded as
/// v | (sign_bit << n).
class HeisenbergModel {
 public:
  static constexpr int kMaxDim = 12;

  /// Uses the strict upper triangle of the form as U.
  explicit HeisenbergModel(AltForm form, F2Space space = {});
  /// Arbitrary cocycle matrix U (rows as bit masks) with U + U^T equal to the
  /// form off the diagonal.
  HeisenbergModel(AltForm form, std::vector<std::uint32_t> cocycle_rows, F2Space space);

  const F2Space& space() const noexcept { return space_; }
  const AltForm& form() const noexcept { return form_; }
  int dim() const noexcept { return form_.dim(); }
  std::uint32_t order() const noexcept { return std::uint32_t{2} << dim(); }

  std::uint32_t make(std::uint32_t v, bool negative) const { return v | (negative ? central_sign() : 0u); }
  std::uint32_t vector_part(std::uint32_t g) const { return g & (central_sign() - 1); }
  bool is_negative(std::uint32_t g) const { return (g & central_sign()) != 0; }
  /// Code of (0, -1).
  std::uint32_t central_sign() const { return std::uint32_t{1} << dim(); }

  /// (-1)^(v^T U w) as a bit.
  unsigned cocycle(std::uint32_t v, std::uint32_t w) const;
  std::uint32_t mul(std::uint32_t g, std::uint32_t h) const;
  std::uint32_t inv(std::uint32_t g) const;
  std::uint32_t commutator(std::uint32_t g, std::uint32_t h) const;

  Subspace radical() const;
  /// Image in F2^n of the centre; equals the radical.
  Subspace center_image() const;
  bool is_isotropic(const Subspace& a) const;

 private:
  AltForm form_;
  std::vector<std::uint32_t> upper_;
  F2Space space_;
};

/// Maximal isotropic subspaces; each contains the radical. Throws
/// DimensionTooLarge above 8.
std::vector<Subspace> maximal_isotropics(const HeisenbergModel& model);

/// A genuine character of the abelian preimage of an isotropic subspace A.
/// signs bit j gives lambda(b_j, +1) = (-1)^bit * i^(q(b_j)) for the
/// basis b_j of A, where q(v) = v^T U v.
struct IsotropicCharacter {
  Subspace isotropic;
  std::uint32_t signs = 0;
};

/// Values on every element of the preimage of A (zero elsewhere).
ClassFunction isotropic_character_values(const HeisenbergModel& model, const IsotropicCharacter& lambda);

struct GenuineIrrep {
  IsotropicCharacter inducing;
  ClassFunction character;
  std::int64_t dim = 0;
};

/// Ind from the preimage of a maximal isotropic A. Throws NotIsotropic when A
/// is not maximal isotropic.
GenuineIrrep induce(const HeisenbergModel& model, const IsotropicCharacter& lambda);
/// Induces an arbitrary class function given on the preimage of A.
ClassFunction induce_values(const HeisenbergModel& model, const Subspace& a, const ClassFunction& values);

/// <f, g> times |G|; exact.
GaussInt inner_product_scaled(const ClassFunction& f, const ClassFunction& g);
/// <f, g>; throws SnapFailure if it is not an integer.
std::int64_t inner_product(const ClassFunction& f, const ClassFunction& g);

/// Every genuine irreducible character, one per class of inducing data.
std::vector<GenuineIrrep> genuine_irreps(const HeisenbergModel& model);

/// Multiplicity of each genuine character of A in the restriction of sigma;
/// only non-zero entries.
std::vector<std::pair<IsotropicCharacter, std::int64_t>> restrict_to_isotropic(
    const HeisenbergModel& model, const GenuineIrrep& sigma, const Subspace& a);

struct Decomposition {
  ClassFunction induced;
  std::int64_t induced_dim = 0;
  std::vector<std::pair<GenuineIrrep, std::int64_t>> parts;
};

/// Ind from the centre of a genuine central character omega, given as sign
/// bits over the radical basis. Throws NotGenuine for a character of the wrong
/// shape.
Decomposition decompose_induced_from_center(const HeisenbergModel& model, std::uint32_t omega_signs);

/// lambda^s(a) = lambda(s a s^-1), as a character of the same A.
IsotropicCharacter conjugate_character(const HeisenbergModel& model, const IsotropicCharacter& lambda,
                                       std::uint32_t s);

struct CharacterTable {
  std::vector<std::vector<std::uint32_t>> classes;
  std::vector<ClassFunction> characters;

  std::vector<std::int64_t> dims() const;
  /// Rows with chi(0, -1) = -chi(1).
  std::vector<ClassFunction> genuine_rows(const HeisenbergModel& model) const;
};

/// Character table found without the form: conjugacy classes by orbits,
/// linear characters from the abelianization, the rest induced from maximal
/// abelian subgroups found by a greedy search. Throws DimensionTooLarge
/// above 8.
CharacterTable brute_force_character_table(const HeisenbergModel& model);

/// Bit-string of an element: vector coordinates 0..n-1, then '+' or '-' for
/// the central sign.
std::string element_key(const HeisenbergModel& model, std::uint32_t g);
/// Values keyed by element_key, in element order.
nlohmann::ordered_json class_function_json(const HeisenbergModel& model, const ClassFunction& f);

}  // namespace metabranch
