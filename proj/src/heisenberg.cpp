#include "metabranch/heisenberg.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "metabranch/error.hpp"

namespace metabranch {

namespace {

unsigned parity(std::uint32_t x) { return static_cast<unsigned>(std::popcount(x) & 1); }

std::uint32_t leading_bit(std::uint32_t v) { return std::uint32_t{1} << (31 - std::countl_zero(v)); }

constexpr GaussInt kUnits[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// The integer bilinear value sum_{i in x} popcount(rows[i] & y) mod 2.
unsigned bilinear(const std::vector<std::uint32_t>& rows, std::uint32_t x, std::uint32_t y) {
  unsigned acc = 0;
  while (x != 0) {
    const int i = std::countr_zero(x);
    acc ^= parity(rows[i] & y);
    x &= x - 1;
  }
  return acc;
}

Subspace greedy_maximal_isotropic(const HeisenbergModel& model) {
  const AltForm& form = model.form();
  Subspace s = model.radical();
  const int target = s.dim() + (form.dim() - s.dim()) / 2;
  for (std::uint32_t v = 1; v < model.space().size() && s.dim() < target; ++v) {
    if (s.contains(v)) continue;
    bool orthogonal = true;
    for (std::uint32_t b : s.basis()) orthogonal = orthogonal && form(v, b) == 0;
    if (orthogonal) s = s.with(v);
  }
  return s;
}

int maximal_isotropic_dim(const HeisenbergModel& model) {
  const int r = model.radical().dim();
  return r + (model.dim() - r) / 2;
}

}  // namespace

GaussInt GaussInt::i_pow(int k) { return kUnits[((k % 4) + 4) % 4]; }

std::string GaussInt::to_string() const {
  if (im == 0) return std::to_string(re);
  const std::string imag = (im == 1 ? "" : im == -1 ? "-" : std::to_string(im)) + "i";
  if (re == 0) return imag;
  return std::to_string(re) + (im > 0 ? "+" : "") + imag;
}

F2Space F2Space::numbered(int dim) {
  F2Space s{dim, {}};
  for (int i = 0; i < dim; ++i) s.labels.push_back("e" + std::to_string(i));
  return s;
}

AltForm AltForm::from_rows(int dim, std::vector<std::uint32_t> rows) {
  if (dim < 0 || dim > 31 || static_cast<int>(rows.size()) != dim)
    throw Error(ErrorCode::DimensionTooLarge, "form dimension out of range");
  const std::uint32_t all = dim == 0 ? 0 : (std::uint32_t{1} << dim) - 1;
  for (int i = 0; i < dim; ++i) {
    if (rows[i] & ~all) throw Error(ErrorCode::NotAlternating, "row has bits past the dimension");
    if ((rows[i] >> i) & 1u) throw Error(ErrorCode::NotAlternating, "non-zero diagonal entry");
    for (int j = 0; j < dim; ++j)
      if (((rows[i] >> j) & 1u) != ((rows[j] >> i) & 1u))
        throw Error(ErrorCode::NotAlternating, "matrix is not symmetric");
  }
  return AltForm(dim, std::move(rows));
}

AltForm AltForm::symplectic(int half_dim) {
  std::vector<std::uint32_t> rows(2 * half_dim, 0);
  for (int i = 0; i < half_dim; ++i) {
    rows[i] |= std::uint32_t{1} << (i + half_dim);
    rows[i + half_dim] |= std::uint32_t{1} << i;
  }
  return from_rows(2 * half_dim, rows);
}

AltForm AltForm::random(int dim, std::mt19937_64& rng) {
  std::vector<std::uint32_t> rows(dim, 0);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (rng() & 1u) {
        rows[i] |= std::uint32_t{1} << j;
        rows[j] |= std::uint32_t{1} << i;
      }
  return from_rows(dim, rows);
}

unsigned AltForm::operator()(std::uint32_t x, std::uint32_t y) const { return bilinear(rows_, x, y); }

std::uint32_t AltForm::pairing_mask(std::uint32_t v) const {
  std::uint32_t m = 0;
  while (v != 0) {
    m ^= rows_[std::countr_zero(v)];
    v &= v - 1;
  }
  return m;
}

AltForm AltForm::change_basis(const std::vector<std::uint32_t>& columns) const {
  std::vector<std::uint32_t> rows(dim_, 0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      if ((*this)(columns[i], columns[j])) rows[i] |= std::uint32_t{1} << j;
  return from_rows(dim_, rows);
}

Subspace Subspace::span(int ambient_dim, const std::vector<std::uint32_t>& vectors) {
  Subspace s;
  s.ambient_ = ambient_dim;
  for (std::uint32_t v : vectors) s = s.with(v);
  return s;
}

std::uint32_t Subspace::reduce(std::uint32_t v) const {
  for (std::uint32_t b : basis_)
    if (v & leading_bit(b)) v ^= b;
  return v;
}

bool Subspace::contains(std::uint32_t v) const { return reduce(v) == 0; }

Subspace Subspace::with(std::uint32_t v) const {
  Subspace s = *this;
  v = s.reduce(v);
  if (v == 0) return s;
  const std::uint32_t pivot = leading_bit(v);
  for (std::uint32_t& b : s.basis_)
    if (b & pivot) b ^= v;
  s.basis_.push_back(v);
  std::sort(s.basis_.begin(), s.basis_.end(), std::greater<>());
  return s;
}

std::vector<std::uint32_t> Subspace::elements() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << dim()); ++m) {
    std::uint32_t v = 0;
    for (int j = 0; j < dim(); ++j)
      if ((m >> j) & 1u) v ^= basis_[j];
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint32_t> Subspace::complement_basis() const {
  std::uint32_t pivots = 0;
  for (std::uint32_t b : basis_) pivots |= leading_bit(b);
  std::vector<std::uint32_t> out;
  for (int i = 0; i < ambient_; ++i)
    if (!((pivots >> i) & 1u)) out.push_back(std::uint32_t{1} << i);
  return out;
}

HeisenbergModel::HeisenbergModel(AltForm form, F2Space space)
    : form_(std::move(form)), space_(std::move(space)) {
  if (form_.dim() > kMaxDim) throw Error(ErrorCode::DimensionTooLarge, "model dimension above 12");
  if (space_.dim == 0 && space_.labels.empty()) space_ = F2Space::numbered(form_.dim());
  if (space_.dim != form_.dim() || static_cast<int>(space_.labels.size()) != space_.dim)
    throw Error(ErrorCode::DimensionTooLarge, "space and form dimensions differ");
  upper_.assign(form_.dim(), 0);
  for (int i = 0; i < form_.dim(); ++i) upper_[i] = form_.rows()[i] & ~((std::uint32_t{2} << i) - 1);
}

HeisenbergModel::HeisenbergModel(AltForm form, std::vector<std::uint32_t> cocycle_rows, F2Space space)
    : HeisenbergModel(std::move(form), std::move(space)) {
  const int n = form_.dim();
  if (static_cast<int>(cocycle_rows.size()) != n)
    throw Error(ErrorCode::NotAlternating, "cocycle matrix has the wrong size");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const unsigned sym = ((cocycle_rows[i] >> j) ^ (cocycle_rows[j] >> i)) & 1u;
      if (sym != ((form_.rows()[i] >> j) & 1u))
        throw Error(ErrorCode::NotAlternating, "U + U^T does not match the form");
    }
  upper_ = std::move(cocycle_rows);
}

unsigned HeisenbergModel::cocycle(std::uint32_t v, std::uint32_t w) const { return bilinear(upper_, v, w); }

std::uint32_t HeisenbergModel::mul(std::uint32_t g, std::uint32_t h) const {
  const std::uint32_t v = vector_part(g), w = vector_part(h);
  const std::uint32_t sign = (g ^ h) & central_sign();
  return (v ^ w) | (sign ^ (cocycle(v, w) ? central_sign() : 0u));
}

std::uint32_t HeisenbergModel::inv(std::uint32_t g) const {
  const std::uint32_t v = vector_part(g);
  return g ^ (cocycle(v, v) ? central_sign() : 0u);
}

std::uint32_t HeisenbergModel::commutator(std::uint32_t g, std::uint32_t h) const {
  return mul(mul(g, h), mul(inv(g), inv(h)));
}

Subspace HeisenbergModel::radical() const {
  std::vector<std::uint32_t> kernel;
  for (std::uint32_t v = 1; v < space_.size(); ++v)
    if (form_.pairing_mask(v) == 0) kernel.push_back(v);
  return Subspace::span(dim(), kernel);
}

Subspace HeisenbergModel::center_image() const {
  std::vector<std::uint32_t> central;
  for (std::uint32_t g = 0; g < order(); ++g) {
    bool ok = true;
    for (int i = 0; i < dim() && ok; ++i) {
      const std::uint32_t h = std::uint32_t{1} << i;
      ok = mul(g, h) == mul(h, g);
    }
    if (ok) central.push_back(vector_part(g));
  }
  return Subspace::span(dim(), central);
}

bool HeisenbergModel::is_isotropic(const Subspace& a) const {
  for (std::uint32_t x : a.basis())
    for (std::uint32_t y : a.basis())
      if (form_(x, y)) return false;
  return true;
}

std::vector<Subspace> maximal_isotropics(const HeisenbergModel& model) {
  if (model.dim() > 8) throw Error(ErrorCode::DimensionTooLarge, "enumeration is limited to dimension 8");
  const int target = maximal_isotropic_dim(model);
  std::set<Subspace> level{model.radical()};
  for (int d = model.radical().dim(); d < target; ++d) {
    std::set<Subspace> next;
    for (const Subspace& s : level) {
      for (std::uint32_t v = 1; v < model.space().size(); ++v) {
        bool orthogonal = true;
        for (std::uint32_t b : s.basis()) orthogonal = orthogonal && model.form()(b, v) == 0;
        if (orthogonal && !s.contains(v)) next.insert(s.with(v));
      }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

ClassFunction isotropic_character_values(const HeisenbergModel& model, const IsotropicCharacter& lambda) {
  const Subspace& a = lambda.isotropic;
  if (!model.is_isotropic(a)) throw Error(ErrorCode::NotIsotropic, "subspace is not isotropic");
  if (lambda.signs >> a.dim()) throw Error(ErrorCode::NotGenuine, "sign bits exceed the subspace dimension");
  std::vector<GaussInt> generator_values;
  for (int j = 0; j < a.dim(); ++j) {
    const std::uint32_t b = a.basis()[j];
    GaussInt value = GaussInt::i_pow(static_cast<int>(model.cocycle(b, b)));
    if ((lambda.signs >> j) & 1u) value = -value;
    generator_values.push_back(value);
  }
  ClassFunction values(model.order(), GaussInt{});
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << a.dim()); ++m) {
    std::uint32_t g = 0;
    GaussInt value{1, 0};
    for (int j = 0; j < a.dim(); ++j) {
      if (!((m >> j) & 1u)) continue;
      g = model.mul(g, a.basis()[j]);
      value = value * generator_values[j];
    }
    values[g] = value;
    values[g ^ model.central_sign()] = -value;
  }
  return values;
}

ClassFunction induce_values(const HeisenbergModel& model, const Subspace& a, const ClassFunction& values) {
  // The preimage of A contains the commutator subgroup, so it is normal and
  // any transversal works on either side.
  const Subspace complement = Subspace::span(model.dim(), a.complement_basis());
  const std::vector<std::uint32_t> transversal = complement.elements();
  ClassFunction out(model.order(), GaussInt{});
  for (std::uint32_t g = 0; g < model.order(); ++g) {
    if (!a.contains(model.vector_part(g))) continue;
    GaussInt acc{};
    for (std::uint32_t t : transversal) acc += values[model.mul(model.mul(t, g), model.inv(t))];
    out[g] = acc;
  }
  return out;
}

GaussInt inner_product_scaled(const ClassFunction& f, const ClassFunction& g) {
  GaussInt acc{};
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * g[i].conj();
  return acc;
}

std::int64_t inner_product(const ClassFunction& f, const ClassFunction& g) {
  const GaussInt s = inner_product_scaled(f, g);
  const auto n = static_cast<std::int64_t>(f.size());
  if (s.im != 0 || s.re % n != 0)
    throw Error(ErrorCode::SnapFailure, "character inner product is not an integer");
  return s.re / n;
}

GenuineIrrep induce(const HeisenbergModel& model, const IsotropicCharacter& lambda) {
  const Subspace& a = lambda.isotropic;
  const Subspace rad = model.radical();
  bool contains_radical = true;
  for (std::uint32_t r : rad.basis()) contains_radical = contains_radical && a.contains(r);
  if (!model.is_isotropic(a) || !contains_radical || a.dim() != maximal_isotropic_dim(model))
    throw Error(ErrorCode::NotIsotropic, "inducing subspace is not maximal isotropic");
  GenuineIrrep irrep{lambda, induce_values(model, a, isotropic_character_values(model, lambda)), 0};
  irrep.dim = irrep.character[0].re;
  return irrep;
}

std::vector<GenuineIrrep> genuine_irreps(const HeisenbergModel& model) {
  const Subspace a = greedy_maximal_isotropic(model);
  std::vector<GenuineIrrep> out;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << a.dim()); ++s) {
    GenuineIrrep irrep = induce(model, {a, s});
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const GenuineIrrep& o) { return o.character == irrep.character; });
    if (!seen) out.push_back(std::move(irrep));
  }
  return out;
}

std::vector<std::pair<IsotropicCharacter, std::int64_t>> restrict_to_isotropic(
    const HeisenbergModel& model, const GenuineIrrep& sigma, const Subspace& a) {
  std::vector<std::pair<IsotropicCharacter, std::int64_t>> out;
  const auto preimage_order = static_cast<std::int64_t>(std::uint32_t{2} << a.dim());
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << a.dim()); ++s) {
    const IsotropicCharacter lambda{a, s};
    const ClassFunction values = isotropic_character_values(model, lambda);
    GaussInt acc{};
    for (std::uint32_t g = 0; g < model.order(); ++g)
      if (values[g] != GaussInt{}) acc += sigma.character[g] * values[g].conj();
    if (acc.im != 0 || acc.re % preimage_order != 0)
      throw Error(ErrorCode::SnapFailure, "restriction multiplicity is not an integer");
    if (acc.re != 0) out.emplace_back(lambda, acc.re / preimage_order);
  }
  return out;
}

Decomposition decompose_induced_from_center(const HeisenbergModel& model, std::uint32_t omega_signs) {
  const Subspace rad = model.radical();
  if (omega_signs >> rad.dim()) throw Error(ErrorCode::NotGenuine, "central character has too many sign bits");
  Decomposition d;
  d.induced = induce_values(model, rad, isotropic_character_values(model, {rad, omega_signs}));
  d.induced_dim = d.induced[0].re;
  for (GenuineIrrep& sigma : genuine_irreps(model)) {
    const std::int64_t m = inner_product(d.induced, sigma.character);
    if (m != 0) d.parts.emplace_back(std::move(sigma), m);
  }
  return d;
}

IsotropicCharacter conjugate_character(const HeisenbergModel& model, const IsotropicCharacter& lambda,
                                       std::uint32_t s) {
  const ClassFunction values = isotropic_character_values(model, lambda);
  IsotropicCharacter out = lambda;
  for (int j = 0; j < lambda.isotropic.dim(); ++j) {
    const std::uint32_t b = lambda.isotropic.basis()[j];
    const std::uint32_t conj = model.mul(model.mul(s, b), model.inv(s));
    if (values[conj] == -values[b]) out.signs ^= 1u << j;
  }
  return out;
}

std::vector<std::int64_t> CharacterTable::dims() const {
  std::vector<std::int64_t> out;
  for (const ClassFunction& c : characters) out.push_back(c[0].re);
  return out;
}

std::vector<ClassFunction> CharacterTable::genuine_rows(const HeisenbergModel& model) const {
  std::vector<ClassFunction> out;
  for (const ClassFunction& c : characters)
    if (c[model.central_sign()] == -c[0]) out.push_back(c);
  return out;
}

namespace {

// Group given only by its multiplication on codes [0, order).
struct GroupView {
  const HeisenbergModel& model;
  std::uint32_t order() const { return model.order(); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return model.mul(a, b); }
  std::uint32_t inv(std::uint32_t a) const {
    for (std::uint32_t b = 0; b < order(); ++b)
      if (mul(a, b) == 0) return b;
    return 0;
  }
};

std::vector<bool> closure(const GroupView& g, std::vector<std::uint32_t> gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<std::uint32_t> members{0};
  in[0] = true;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::uint32_t s : gens) {
      const std::uint32_t x = g.mul(members[i], s);
      if (!in[x]) {
        in[x] = true;
        members.push_back(x);
      }
    }
  return in;
}

// Characters of the abelian group whose members are the codes with
// member[x] true, or of its image modulo a normal subgroup through canon.
// Generators are added one at a time; each new x with x^k first landing in
// the span so far contributes the k-th roots of the old value on x^k.
template <typename Canon>
std::vector<ClassFunction> abelian_characters(const GroupView& g, const std::vector<bool>& member, Canon canon) {
  const std::uint32_t n = g.order();
  std::vector<bool> span(n, false);
  std::vector<std::uint32_t> span_list{canon(0)};
  span[canon(0)] = true;
  std::vector<ClassFunction> chars(1, ClassFunction(n, GaussInt{}));
  chars[0][canon(0)] = {1, 0};
  for (std::uint32_t x0 = 0; x0 < n; ++x0) {
    if (!member[x0]) continue;
    const std::uint32_t x = canon(x0);
    if (span[x]) continue;
    std::vector<std::uint32_t> powers{canon(0), x};
    while (!span[canon(g.mul(powers.back(), x))]) powers.push_back(canon(g.mul(powers.back(), x)));
    const std::size_t k = powers.size();
    const std::uint32_t landing = canon(g.mul(powers.back(), x));
    std::vector<ClassFunction> next;
    for (const ClassFunction& chi : chars) {
      int roots = 0;
      for (GaussInt z : kUnits) {
        GaussInt zk{1, 0};
        for (std::size_t e = 0; e < k; ++e) zk = zk * z;
        if (zk != chi[landing]) continue;
        ++roots;
        ClassFunction ext = chi;
        GaussInt ze{1, 0};
        for (std::size_t e = 1; e < k; ++e) {
          ze = ze * z;
          for (std::uint32_t s : span_list) ext[canon(g.mul(s, powers[e]))] = chi[s] * ze;
        }
        next.push_back(std::move(ext));
      }
      if (roots != static_cast<int>(k))
        throw Error(ErrorCode::SnapFailure, "abelian character values leave the Gaussian integers");
    }
    chars = std::move(next);
    std::vector<std::uint32_t> grown;
    for (std::size_t e = 0; e < k; ++e)
      for (std::uint32_t s : span_list) grown.push_back(canon(g.mul(s, powers[e])));
    for (std::uint32_t y : grown) span[y] = true;
    span_list = std::move(grown);
  }
  return chars;
}

}  // namespace

CharacterTable brute_force_character_table(const HeisenbergModel& model) {
  if (model.dim() > 8) throw Error(ErrorCode::DimensionTooLarge, "brute force is limited to dimension 8");
  const GroupView g{model};
  const std::uint32_t n = g.order();
  std::vector<std::uint32_t> inverse(n);
  for (std::uint32_t x = 0; x < n; ++x) inverse[x] = g.inv(x);

  CharacterTable table;
  std::vector<int> class_of(n, -1);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (class_of[x] >= 0) continue;
    std::vector<std::uint32_t> orbit;
    for (std::uint32_t h = 0; h < n; ++h) {
      const std::uint32_t y = g.mul(g.mul(h, x), inverse[h]);
      if (class_of[y] < 0) {
        class_of[y] = static_cast<int>(table.classes.size());
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    table.classes.push_back(std::move(orbit));
  }

  // Linear characters through the abelianization.
  std::vector<std::uint32_t> commutators;
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y)
      commutators.push_back(g.mul(g.mul(x, y), g.mul(inverse[x], inverse[y])));
  std::sort(commutators.begin(), commutators.end());
  commutators.erase(std::unique(commutators.begin(), commutators.end()), commutators.end());
  const std::vector<bool> derived = closure(g, commutators);
  std::vector<std::uint32_t> derived_list;
  for (std::uint32_t x = 0; x < n; ++x)
    if (derived[x]) derived_list.push_back(x);
  std::vector<std::uint32_t> canon(n);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint32_t best = x;
    for (std::uint32_t c : derived_list) best = std::min(best, g.mul(x, c));
    canon[x] = best;
  }
  const std::vector<bool> everything(n, true);
  for (ClassFunction& chi : abelian_characters(g, everything, [&](std::uint32_t x) { return canon[x]; })) {
    ClassFunction lifted(n);
    for (std::uint32_t x = 0; x < n; ++x) lifted[x] = chi[canon[x]];
    table.characters.push_back(std::move(lifted));
  }

  auto total = [&] {
    std::int64_t s = 0;
    for (const ClassFunction& c : table.characters) s += c[0].re * c[0].re;
    return s;
  };

  std::vector<std::uint32_t> centre;
  for (std::uint32_t z = 0; z < n; ++z) {
    bool central = true;
    for (std::uint32_t h = 0; h < n && central; ++h) central = g.mul(z, h) == g.mul(h, z);
    if (central) centre.push_back(z);
  }

  std::set<std::vector<bool>> tried;
  for (std::uint32_t seed = 0; seed < n && total() < static_cast<std::int64_t>(n); ++seed) {
    std::vector<std::uint32_t> gens = centre;
    gens.push_back(seed);
    std::vector<bool> h = closure(g, gens);
    for (std::uint32_t y = 0; y < n; ++y) {
      if (h[y]) continue;
      bool commutes = true;
      for (std::uint32_t s : gens) commutes = commutes && g.mul(s, y) == g.mul(y, s);
      if (!commutes) continue;
      gens.push_back(y);
      h = closure(g, gens);
    }
    if (!tried.insert(h).second) continue;

    std::vector<std::uint32_t> transversal;
    std::vector<bool> covered(n, false);
    for (std::uint32_t x = 0; x < n; ++x) {
      if (covered[x]) continue;
      transversal.push_back(x);
      for (std::uint32_t y = 0; y < n; ++y)
        if (h[y]) covered[g.mul(x, y)] = true;
    }
    for (const ClassFunction& lambda : abelian_characters(g, h, [](std::uint32_t x) { return x; })) {
      ClassFunction induced(n, GaussInt{});
      for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t t : transversal) {
          const std::uint32_t y = g.mul(g.mul(inverse[t], x), t);
          if (h[y]) induced[x] += lambda[y];
        }
      if (inner_product(induced, induced) != 1) continue;
      const bool seen = std::any_of(table.characters.begin(), table.characters.end(),
                                    [&](const ClassFunction& c) { return c == induced; });
      if (!seen) table.characters.push_back(std::move(induced));
    }
  }
  return table;
}

}  // namespace metabranch

namespace metabranch {

std::string element_key(const HeisenbergModel& model, std::uint32_t g) {
  std::string key;
  for (int i = 0; i < model.dim(); ++i) key += ((g >> i) & 1u) ? '1' : '0';
  return key + (model.is_negative(g) ? '-' : '+');
}

nlohmann::ordered_json class_function_json(const HeisenbergModel& model, const ClassFunction& f) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::uint32_t g = 0; g < f.size(); ++g) j[element_key(model, g)] = f[g].to_string();
  return j;
}

}  // namespace metabranch
