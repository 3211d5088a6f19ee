#include <cmath>
#include <map>

#include "doctest.h"
#include "metabranch/error.hpp"
#include "metabranch/symbols.hpp"
#include "support.hpp"

using namespace metabranch;
using testing_support::for_all;
using testing_support::Gen;

namespace {

SquareClass c(const LocalField& f, const std::string& label) { return parse_square_class(f, label); }

}  // namespace

TEST_CASE("hilbert examples") {
  const LocalField q5 = LocalField::make(5);
  CHECK(hilbert(q5, c(q5, "5"), c(q5, "2")) == Sign::minus());
  const LocalField q2 = LocalField::make(2);
  CHECK(hilbert(q2, c(q2, "-1"), c(q2, "-1")) == Sign::minus());
  const LocalField q3 = LocalField::make(3);
  CHECK(hilbert_oracle(q3, c(q3, "-1"), c(q3, "-1")) == Sign::plus());
  const LocalField q7 = LocalField::make(7);
  CHECK(hilbert_oracle(q7, c(q7, "7"), c(q7, "7")) == Sign::minus());
  for (std::uint64_t p : testing_support::kAllPrimes) {
    const LocalField f = LocalField::make(p);
    for (int b = 0; b < f.class_count(); ++b) {
      CHECK(hilbert(f, class_from_bits(f, 0), class_from_bits(f, static_cast<unsigned>(b))).is_plus());
      CHECK(hilbert_oracle(f, class_from_bits(f, 0), class_from_bits(f, static_cast<unsigned>(b))).is_plus());
    }
  }
}

TEST_CASE("hilbert matches the textbook formula and the oracle") {
  for (std::uint64_t p : testing_support::kAllPrimes) {
    const LocalField f = LocalField::make(p);
    for (int a = 0; a < f.class_count(); ++a) {
      for (int b = 0; b < f.class_count(); ++b) {
        const SquareClass ca = class_from_bits(f, static_cast<unsigned>(a));
        const SquareClass cb = class_from_bits(f, static_cast<unsigned>(b));
        const int expected =
            testing_support::classical_hilbert(ca.representative_integer(f), cb.representative_integer(f), p);
        INFO(f.name() << " (" << ca.label() << ", " << cb.label() << ")");
        CHECK(hilbert(f, ca, cb).value() == expected);
        CHECK(hilbert_oracle(f, ca, cb).value() == expected);
      }
    }
  }
}

TEST_CASE("Q_2 table is frozen") {
  // Rows and columns in class order 1, -1, 2, -2, 5, -5, 10, -10.
  const int expected[8][8] = {
      {1, 1, 1, 1, 1, 1, 1, 1},     {1, -1, 1, -1, 1, -1, 1, -1}, {1, 1, 1, 1, -1, -1, -1, -1},
      {1, -1, 1, -1, -1, 1, -1, 1}, {1, 1, -1, -1, 1, 1, -1, -1}, {1, -1, -1, 1, 1, -1, -1, 1},
      {1, 1, -1, -1, -1, -1, 1, 1}, {1, -1, -1, 1, -1, 1, 1, -1},
  };
  const LocalField q2 = LocalField::make(2);
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b)
      CHECK(hilbert(q2, class_from_bits(q2, a), class_from_bits(q2, b)).value() == expected[a][b]);
}

TEST_CASE("hilbert on field elements") {
  for_all(500, 0x61, [](Gen& g, int i) {
    const std::uint64_t p = g.prime();
    const LocalField f = LocalField::make(p);
    const std::int64_t a = g.small_integer(), b = g.small_integer();
    INFO("case " << i << " (" << a << ", " << b << ") over " << f.name());
    CHECK(hilbert(f, PadicNumber::from_integer(f, a), PadicNumber::from_integer(f, b)).value() ==
          testing_support::classical_hilbert(a, b, p));
  });
}

TEST_CASE("property: symmetric, bimultiplicative, non-degenerate") {
  for (std::uint64_t p : testing_support::kAllPrimes) {
    const LocalField f = LocalField::make(p);
    const int n = f.class_count();
    for (int a = 0; a < n; ++a) {
      const SquareClass ca = class_from_bits(f, static_cast<unsigned>(a));
      bool some_minus = false;
      for (int b = 0; b < n; ++b) {
        const SquareClass cb = class_from_bits(f, static_cast<unsigned>(b));
        CHECK(hilbert(f, ca, cb) == hilbert(f, cb, ca));
        some_minus = some_minus || !hilbert(f, ca, cb).is_plus();
        for (int a2 = 0; a2 < n; ++a2) {
          const SquareClass ca2 = class_from_bits(f, static_cast<unsigned>(a2));
          CHECK(hilbert(f, ca * ca2, cb) == hilbert(f, ca, cb) * hilbert(f, ca2, cb));
        }
      }
      if (a != 0) CHECK(some_minus);
    }
  }
}

TEST_CASE("property: symbols are stable under extra precision") {
  for (std::uint64_t p : testing_support::kAllPrimes) {
    const LocalField f = LocalField::make(p);
    const LocalField finer = LocalField::make(p, f.precision() + 8);
    for (int a = 0; a < f.class_count(); ++a)
      for (int b = 0; b < f.class_count(); ++b)
        CHECK(hilbert_oracle(f, class_from_bits(f, a), class_from_bits(f, b)) ==
              hilbert_oracle(finer, class_from_bits(finer, a), class_from_bits(finer, b)));
  }
}

TEST_CASE("extension symbol examples") {
  const LocalField q5 = LocalField::make(5);
  const QuadExt e2 = QuadExt::make(q5, c(q5, "u"));
  const ExtClass two = e2.classify(e2.from_integers(2, 0));
  const ExtClass five = e2.classify(e2.from_integers(5, 0));
  CHECK(hilbert_ext(e2, two, five).is_plus());
  const QuadExt e5 = QuadExt::make(q5, c(q5, "p"));
  const ExtClass minus_one = e5.classify(e5.from_integers(-1, 0));
  CHECK(hilbert_ext(e5, minus_one, minus_one).is_plus());
  for (int b = 0; b < e5.class_count(); ++b) CHECK(hilbert_ext(e5, ExtClass{0}, ExtClass{static_cast<unsigned>(b)}).is_plus());
}

TEST_CASE("extension symbols match the norm-form oracle") {
  for (std::uint64_t p : testing_support::kAllPrimes) {
    for (const QuadExt& e : all_quadratic_extensions(LocalField::make(p))) {
      const int n = e.class_count();
      for (int a = 0; a < n; ++a) {
        bool some_minus = false;
        for (int b = 0; b < n; ++b) {
          const ExtClass ca{static_cast<unsigned>(a)}, cb{static_cast<unsigned>(b)};
          INFO(e.name() << " (" << e.label(ca) << ", " << e.label(cb) << ")");
          CHECK(hilbert_ext(e, ca, cb) == hilbert_ext_oracle(e, ca, cb));
          CHECK(hilbert_ext(e, ca, cb) == hilbert_ext(e, cb, ca));
          some_minus = some_minus || !hilbert_ext(e, ca, cb).is_plus();
        }
        if (a != 0) CHECK(some_minus);
      }
    }
  }
}

TEST_CASE("norm compatibility sweep") {
  for (std::uint64_t p : testing_support::kAllPrimes) {
    const LocalField f = LocalField::make(p);
    for (const QuadExt& e : all_quadratic_extensions(f)) {
      const NormCompatibilityReport r = check_norm_compatibility(e);
      CHECK(r.entries.size() == static_cast<std::size_t>(e.class_count() * f.class_count()));
      CHECK(r.all_pass());
    }
  }
}

TEST_CASE("d pairs trivially with every norm") {
  for (std::uint64_t p : testing_support::kAllPrimes) {
    const LocalField f = LocalField::make(p);
    for (const QuadExt& e : all_quadratic_extensions(f))
      for (int a = 0; a < e.class_count(); ++a)
        CHECK(hilbert(f, e.discriminant(), e.norm_class_of(ExtClass{static_cast<unsigned>(a)})).is_plus());
  }
}

TEST_CASE("Gauss sums") {
  for (std::uint64_t p : testing_support::kOddPrimes) {
    const WeilIndex g = gauss_sum_normalized(p);
    CHECK(g.label == (p % 4 == 1 ? 0 : 2));
    CHECK(std::abs(g.witness - testing_support::gauss_sum_oracle(p)) < 1e-9);
    CHECK(std::abs(g.witness - g.exact()) < 1e-9);
  }
}

TEST_CASE("Weil index labels are frozen") {
  // Labels k of exp(2 pi i k / 8) for classes 1, u, p, up.
  const std::map<std::uint64_t, std::vector<int>> expected{
      {3, {0, 0, 6, 2}}, {5, {0, 0, 0, 4}}, {7, {0, 0, 6, 2}}, {13, {0, 0, 0, 4}}};
  for (const auto& [p, labels] : expected) {
    const LocalField f = LocalField::make(p);
    for (unsigned b = 0; b < 4; ++b) {
      const SquareClass k = class_from_bits(f, b);
      const WeilIndex mu = weil_index(f, k);
      INFO(f.name() << " class " << k.label());
      CHECK(mu.label == labels[b]);
      CHECK(mu.label == testing_support::weil_label_oracle(k.representative_integer(f), p));
      CHECK(std::abs(mu.witness - mu.exact()) < 1e-9);
    }
  }
}

TEST_CASE("Weil index multiplicativity") {
  const LocalField q5 = LocalField::make(5);
  CHECK(weil_index(q5, c(q5, "2")) * weil_index(q5, c(q5, "5")) ==
        weil_index(q5, c(q5, "10")) * hilbert(q5, c(q5, "2"), c(q5, "5")));
  for (std::uint64_t p : testing_support::kOddPrimes) {
    const LocalField f = LocalField::make(p);
    for (unsigned a = 0; a < 4; ++a)
      for (unsigned b = 0; b < 4; ++b) {
        const SquareClass ca = class_from_bits(f, a), cb = class_from_bits(f, b);
        CHECK(weil_index(f, ca) * weil_index(f, cb) == weil_index(f, ca * cb) * hilbert(f, ca, cb));
      }
  }
}

TEST_CASE("Weil index needs odd p") {
  const LocalField q2 = LocalField::make(2);
  try {
    (void)weil_index(q2, class_from_bits(q2, 1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvenResidueChar);
  }
}
