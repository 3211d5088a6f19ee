#include <algorithm>
#include <set>

#include "doctest.h"
#include "metabranch/error.hpp"
#include "metabranch/heisenberg.hpp"
#include "support.hpp"

using namespace metabranch;
using testing_support::for_all;
using testing_support::Gen;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ZeroInput;
}

std::vector<std::int64_t> sorted_dims(const CharacterTable& t) {
  std::vector<std::int64_t> d = t.dims();
  std::sort(d.begin(), d.end());
  return d;
}

struct FunctionLess {
  bool operator()(const ClassFunction& a, const ClassFunction& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](GaussInt x, GaussInt y) {
      return x.re != y.re ? x.re < y.re : x.im < y.im;
    });
  }
};
using FunctionSet = std::set<ClassFunction, FunctionLess>;

FunctionSet as_set(const std::vector<ClassFunction>& rows) { return {rows.begin(), rows.end()}; }

FunctionSet induced_set(const HeisenbergModel& m) {
  FunctionSet out;
  for (const GenuineIrrep& s : genuine_irreps(m)) out.insert(s.character);
  return out;
}

}  // namespace

TEST_CASE("radical examples") {
  CHECK(HeisenbergModel(AltForm::symplectic(1)).radical().dim() == 0);
  CHECK(HeisenbergModel(AltForm::zero(3)).radical().dim() == 3);
  const HeisenbergModel m(AltForm::from_rows(3, {0b010, 0b101, 0b010}));
  // e0 pairs with e1, e1 with e2; e0 + e2 is in the radical.
  CHECK(m.radical() == Subspace::span(3, std::vector<std::uint32_t>{0b101}));
  CHECK(m.center_image() == m.radical());
}

TEST_CASE("group law") {
  const HeisenbergModel m(AltForm::symplectic(2));
  for (std::uint32_t g = 0; g < m.order(); ++g) {
    CHECK(m.mul(g, m.inv(g)) == 0);
    CHECK(m.mul(0, g) == g);
    for (std::uint32_t h = 0; h < m.order(); ++h) {
      const std::uint32_t c = m.commutator(g, h);
      CHECK(m.vector_part(c) == 0);
      CHECK(m.is_negative(c) == (m.form()(m.vector_part(g), m.vector_part(h)) == 1));
      for (std::uint32_t k = 0; k < m.order(); k += 7) CHECK(m.mul(m.mul(g, h), k) == m.mul(g, m.mul(h, k)));
    }
  }
}

TEST_CASE("maximal isotropic counts") {
  CHECK(maximal_isotropics(HeisenbergModel(AltForm::symplectic(1))).size() == 3);
  CHECK(maximal_isotropics(HeisenbergModel(AltForm::symplectic(2))).size() == 15);
  CHECK(maximal_isotropics(HeisenbergModel(AltForm::symplectic(3))).size() == 135);
  const auto whole = maximal_isotropics(HeisenbergModel(AltForm::zero(1)));
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].dim() == 1);
}

TEST_CASE("character table examples") {
  const CharacterTable plane = brute_force_character_table(HeisenbergModel(AltForm::symplectic(1)));
  CHECK(plane.classes.size() == 5);
  CHECK(sorted_dims(plane) == std::vector<std::int64_t>{1, 1, 1, 1, 2});
  const CharacterTable abelian = brute_force_character_table(HeisenbergModel(AltForm::zero(1)));
  CHECK(sorted_dims(abelian) == std::vector<std::int64_t>{1, 1, 1, 1});
  const HeisenbergModel four(AltForm::symplectic(2));
  const CharacterTable t4 = brute_force_character_table(four);
  std::vector<std::int64_t> expected(16, 1);
  expected.push_back(4);
  CHECK(sorted_dims(t4) == expected);
  const auto genuine = t4.genuine_rows(four);
  REQUIRE(genuine.size() == 1);
  CHECK(genuine[0][0] == GaussInt{4, 0});
}

TEST_CASE("induce examples") {
  const HeisenbergModel plane(AltForm::symplectic(1));
  const auto table = brute_force_character_table(plane).genuine_rows(plane);
  for (const Subspace& a : maximal_isotropics(plane)) {
    for (std::uint32_t s = 0; s < 2; ++s) {
      const GenuineIrrep sigma = induce(plane, {a, s});
      CHECK(sigma.dim == 2);
      CHECK(as_set({sigma.character}) == as_set(table));
    }
  }
  const HeisenbergModel trivial(AltForm::zero(0));
  const GenuineIrrep sign = induce(trivial, {Subspace::span(0, std::vector<std::uint32_t>{}), 0});
  CHECK(sign.dim == 1);
  CHECK(sign.character == ClassFunction{GaussInt{1, 0}, GaussInt{-1, 0}});
}

TEST_CASE("restriction to a maximal isotropic") {
  const HeisenbergModel plane(AltForm::symplectic(1));
  const Subspace line = maximal_isotropics(plane)[0];
  const GenuineIrrep sigma = genuine_irreps(plane)[0];
  const auto parts = restrict_to_isotropic(plane, sigma, line);
  CHECK(parts.size() == 2);
  for (const auto& [lambda, mult] : parts) CHECK(mult == 1);

  const HeisenbergModel trivial(AltForm::zero(0));
  const auto self = restrict_to_isotropic(trivial, genuine_irreps(trivial)[0], Subspace::span(0, std::vector<std::uint32_t>{}));
  REQUIRE(self.size() == 1);
  CHECK(self[0].second == 1);
}

TEST_CASE("Ind from the centre") {
  const Decomposition plane = decompose_induced_from_center(HeisenbergModel(AltForm::symplectic(1)), 0);
  CHECK(plane.induced_dim == 4);
  REQUIRE(plane.parts.size() == 1);
  CHECK(plane.parts[0].first.dim == 2);
  CHECK(plane.parts[0].second == 2);

  const Decomposition flat = decompose_induced_from_center(HeisenbergModel(AltForm::zero(1)), 0);
  REQUIRE(flat.parts.size() == 1);
  CHECK(flat.parts[0].second == 1);

  const Decomposition four = decompose_induced_from_center(HeisenbergModel(AltForm::symplectic(2)), 0);
  REQUIRE(four.parts.size() == 1);
  CHECK(four.parts[0].first.dim == 4);
  CHECK(four.parts[0].second == 4);
}

TEST_CASE("serialization keys") {
  const HeisenbergModel m(AltForm::symplectic(1));
  CHECK(element_key(m, 0) == "00+");
  CHECK(element_key(m, m.make(0b01, true)) == "10-");
  const nlohmann::ordered_json j = class_function_json(m, genuine_irreps(m)[0].character);
  CHECK(j.size() == 8);
  CHECK(j["00+"] == "2");
  CHECK(j["00-"] == "-2");
}

TEST_CASE("property: genuine irreps match the brute-force table") {
  for_all(20, 0x71, [](Gen& g, int i) {
    const int n = g.in_range(1, 6);
    const HeisenbergModel m(AltForm::random(n, g.rng));
    const int r = m.radical().dim();
    INFO("case " << i << " n=" << n << " r=" << r);
    const CharacterTable table = brute_force_character_table(m);
    std::int64_t sum = 0;
    for (std::int64_t d : table.dims()) sum += d * d;
    CHECK(sum == m.order());
    CHECK(table.classes.size() == table.characters.size());

    const auto irreps = genuine_irreps(m);
    CHECK(irreps.size() == (std::size_t{1} << r));
    std::int64_t genuine_sum = 0;
    for (const GenuineIrrep& s : irreps) {
      CHECK(s.dim == (std::int64_t{1} << ((n - r) / 2)));
      CHECK(inner_product(s.character, s.character) == 1);
      genuine_sum += s.dim * s.dim;
    }
    CHECK(genuine_sum == (std::int64_t{1} << n));
    CHECK(induced_set(m) == as_set(table.genuine_rows(m)));
  });
}

TEST_CASE("property: maximal abelian index squares to the centre index") {
  for_all(20, 0x72, [](Gen& g, int i) {
    const int n = g.in_range(1, 6);
    const HeisenbergModel m(AltForm::random(n, g.rng));
    const int r = m.radical().dim();
    INFO("case " << i << " n=" << n);
    for (const Subspace& a : maximal_isotropics(m)) {
      CHECK(m.is_isotropic(a));
      CHECK(2 * (a.dim() - r) == n - r);
    }
  });
}

TEST_CASE("property: cocycle choice does not change the representation theory") {
  for_all(15, 0x73, [](Gen& g, int i) {
    const int n = g.in_range(2, 6);
    const AltForm form = AltForm::random(n, g.rng);
    const HeisenbergModel base(form);
    // Lower triangle plus random diagonal: U + U^T is still the form.
    std::vector<std::uint32_t> rows(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      rows[k] = form.rows()[k] & ((std::uint32_t{1} << k) - 1);
      if (g.coin(2)) rows[k] |= std::uint32_t{1} << k;
    }
    const HeisenbergModel other(form, rows, F2Space::numbered(n));
    const HeisenbergModel moved(form.change_basis(g.invertible(n)));
    INFO("case " << i << " n=" << n);
    const CharacterTable t0 = brute_force_character_table(base);
    for (const HeisenbergModel* m : {&other, &moved}) {
      const CharacterTable t = brute_force_character_table(*m);
      CHECK(sorted_dims(t) == sorted_dims(t0));
      CHECK(t.classes.size() == t0.classes.size());
      CHECK(m->radical().dim() == base.radical().dim());
      CHECK(induced_set(*m) == as_set(t.genuine_rows(*m)));
    }
  });
}

TEST_CASE("property: induced characters agree exactly on conjugate inducing data") {
  for_all(12, 0x74, [](Gen& g, int i) {
    const int n = g.in_range(1, 5);
    const HeisenbergModel m(AltForm::random(n, g.rng));
    const auto isotropics = maximal_isotropics(m);
    const Subspace& a = isotropics[g.below(isotropics.size())];
    const std::uint32_t count = std::uint32_t{1} << a.dim();
    INFO("case " << i << " n=" << n << " dim A=" << a.dim());
    for (std::uint32_t s1 = 0; s1 < count; ++s1) {
      std::set<std::uint32_t> orbit;
      for (std::uint32_t v = 0; v < (std::uint32_t{1} << n); ++v)
        orbit.insert(conjugate_character(m, {a, s1}, v).signs);
      const ClassFunction chi1 = induce(m, {a, s1}).character;
      for (std::uint32_t s2 = 0; s2 < count; ++s2)
        CHECK((chi1 == induce(m, {a, s2}).character) == (orbit.count(s2) == 1));
    }
  });
}

TEST_CASE("different maximal isotropics give the same irrep") {
  const HeisenbergModel m(AltForm::symplectic(2));
  const ClassFunction reference = genuine_irreps(m)[0].character;
  for (const Subspace& a : maximal_isotropics(m))
    for (std::uint32_t s = 0; s < 4; ++s) CHECK(induce(m, {a, s}).character == reference);
}

TEST_CASE("errors") {
  CHECK(code_of([] { AltForm::from_rows(2, {0b01, 0b00}); }) == ErrorCode::NotAlternating);
  CHECK(code_of([] { AltForm::from_rows(2, {0b10, 0b00}); }) == ErrorCode::NotAlternating);
  CHECK(code_of([] { HeisenbergModel m(AltForm::zero(13)); }) == ErrorCode::DimensionTooLarge);
  CHECK(code_of([] { brute_force_character_table(HeisenbergModel(AltForm::zero(9))); }) ==
        ErrorCode::DimensionTooLarge);
  const HeisenbergModel plane(AltForm::symplectic(2));
  CHECK(code_of([&] { induce(plane, {Subspace::span(4, std::vector<std::uint32_t>{0b0001}), 0}); }) ==
        ErrorCode::NotIsotropic);
  CHECK(code_of([&] { induce(plane, {Subspace::span(4, std::vector<std::uint32_t>{0b0011, 0b0100}), 0}); }) ==
        ErrorCode::NotIsotropic);
  const HeisenbergModel flat(AltForm::zero(2));
  CHECK(code_of([&] { decompose_induced_from_center(flat, 0b100); }) == ErrorCode::NotGenuine);
}
