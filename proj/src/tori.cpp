#include "metabranch/tori.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "metabranch/error.hpp"
#include "metabranch/symbols.hpp"

namespace metabranch {

namespace {

std::string sign_text(Sign s) { return s.is_plus() ? "+1" : "-1"; }

std::uint32_t bit(unsigned i) { return std::uint32_t{1} << i; }

bool contains_subspace(const std::vector<Subspace>& all, const Subspace& s) {
  return std::find(all.begin(), all.end(), s) != all.end();
}

// {v : B(v, s) = 0 for all s in S}, as a subspace.
Subspace orthogonal_of(const HeisenbergModel& model, const Subspace& s) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 1; v < model.space().size(); ++v) {
    bool orthogonal = true;
    for (std::uint32_t b : s.basis()) orthogonal = orthogonal && model.form()(v, b) == 0;
    if (orthogonal) out.push_back(v);
  }
  return Subspace::span(model.dim(), out);
}

std::string join_labels(std::vector<std::string> labels) {
  std::sort(labels.begin(), labels.end());
  std::string s = "{";
  for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? "," : "") + labels[i];
  return s + "}";
}

Report make_report(const std::string& id, const std::string& anchor, const LocalField& field,
                   const std::string& extension = "") {
  Report r;
  r.lemma_id = id;
  r.anchor = anchor;
  r.field = field.name();
  r.extension = extension;
  return r;
}

PadicNumber random_element(const LocalField& f, std::mt19937_64& rng) {
  const u128 modulus = ipow(f.p(), f.precision());
  u128 u = ((static_cast<u128>(rng()) << 64) | rng()) % modulus;
  if (u % f.p() == 0) u += 1;
  const auto v = static_cast<std::int64_t>(rng() % 3);
  return PadicNumber::from_parts(f, v, u);
}

}  // namespace

Subspace SplitTorusModel::diagonal() const {
  std::vector<std::uint32_t> vs;
  for (int i = 0; i < m; ++i) vs.push_back(bit(i) | bit(i + m));
  return Subspace::span(2 * m, vs);
}

SplitTorusModel build_split_model(const LocalField& field) {
  const int m = field.class_rank();
  std::vector<std::uint32_t> rows(2 * m, 0);
  F2Space space{2 * m, {}};
  for (int i = 0; i < m; ++i) space.labels.push_back("a:" + SquareClass{field.p(), bit(i)}.label());
  for (int i = 0; i < m; ++i) space.labels.push_back("b:" + SquareClass{field.p(), bit(i)}.label());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Sign h = hilbert(field, SquareClass{field.p(), bit(i)}, SquareClass{field.p(), bit(j)});
      if (!h.is_plus()) {
        rows[i] |= bit(m + j);
        rows[m + j] |= bit(i);
      }
    }
  return SplitTorusModel{field, HeisenbergModel(AltForm::from_rows(2 * m, rows), space), m};
}

NonSplitTorusModel build_nonsplit_model(const QuadExt& ext) {
  const LocalField& f = ext.base();
  const int n = ext.class_rank();
  std::vector<std::uint32_t> rows(n, 0);
  F2Space space{n, {}};
  for (int i = 0; i < n; ++i) space.labels.push_back(ext.label(ExtClass{bit(i)}));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const ExtClass a{bit(i)}, b{bit(j)};
      const Sign s = hilbert_ext(ext, a, b) * hilbert(f, ext.norm_class_of(a), ext.norm_class_of(b));
      if (!s.is_plus()) rows[i] |= bit(j);
    }
  std::vector<std::uint32_t> image;
  for (int i = 0; i < f.class_rank(); ++i) image.push_back(ext.embed_class(SquareClass{f.p(), bit(i)}).bits);
  return NonSplitTorusModel{ext, HeisenbergModel(AltForm::from_rows(n, rows), space), Subspace::span(n, image)};
}

Report verify_split_center(const SplitTorusModel& sm) {
  const LocalField& f = sm.base;
  const HeisenbergModel& model = sm.model;
  Report r = make_report("3.1", "centre of the covered split torus is its squares", f);

  std::int64_t mismatches = 0, diagonal_nonzero = 0;
  const int count = f.class_count();
  for (int a = 0; a < count; ++a)
    for (int b = 0; b < count; ++b)
      for (int c = 0; c < count; ++c)
        for (int d = 0; d < count; ++d) {
          auto cls = [&](int x) { return SquareClass{f.p(), static_cast<unsigned>(x)}; };
          const Sign direct = hilbert(f, cls(a), cls(d)) * hilbert(f, cls(c), cls(b));
          const unsigned form = model.form()(sm.pack(cls(a), cls(b)), sm.pack(cls(c), cls(d)));
          if (form != direct.bit()) ++mismatches;
          if (a == c && b == d && form != 0) ++diagonal_nonzero;
        }
  r.check("form equals (a,d)(c,b) on all pairs", 0LL, mismatches);
  r.check("form vanishes on the diagonal", 0LL, diagonal_nonzero);
  r.check("radical dimension", 0LL, model.radical().dim());
  r.check("centre of the model group lies over zero", 0LL, model.center_image().dim());

  const Subspace diag = sm.diagonal();
  const std::vector<Subspace> maximal = maximal_isotropics(model);
  r.check("diagonal image is isotropic", true, model.is_isotropic(diag));
  r.check("diagonal image dimension", static_cast<long long>(sm.m), diag.dim());
  r.check("diagonal image is among the maximal isotropics", true, contains_subspace(maximal, diag));
  r.check("diagonal image equals its own orthogonal", true, orthogonal_of(model, diag) == diag);
  r.check("model size equals [F^x:F^x2]^2", static_cast<long long>(count) * count,
          static_cast<long long>(model.space().size()));

  const Subspace smaller = Subspace::span(2 * sm.m, std::vector<std::uint32_t>(diag.basis().begin() + 1, diag.basis().end()));
  r.check("diagonal minus a basis vector is not maximal", false, contains_subspace(maximal, smaller));
  return r;
}

Report verify_norm_compatibility(const QuadExt& ext) {
  const LocalField& f = ext.base();
  Report r = make_report("3.3", "Hilbert symbols of E and F agree through the norm", f, ext.name());
  for (const NormCompatibilityEntry& e : check_norm_compatibility(ext).entries)
    r.check("(" + ext.label(e.a) + "," + e.b.label() + ")_E = (Nm a," + e.b.label() + ")_F", sign_text(e.rhs),
            sign_text(e.lhs));
  return r;
}

Report verify_field_image(const NonSplitTorusModel& nm) {
  const QuadExt& ext = nm.ext;
  const LocalField& f = ext.base();
  const HeisenbergModel& model = nm.model;
  Report r = make_report("3.4", "F^x E^x2 is maximal abelian in the covered E^x", f, ext.name());
  const std::vector<Subspace> maximal = maximal_isotropics(model);
  r.check("F^x image dimension", static_cast<long long>(f.class_rank() - 1), nm.field_image.dim());
  r.check("F^x image is isotropic", true, model.is_isotropic(nm.field_image));
  r.check("F^x image is among the maximal isotropics", true, contains_subspace(maximal, nm.field_image));
  r.check("centralizer of F^x image is itself", true, orthogonal_of(model, nm.field_image) == nm.field_image);

  // Commuting with all of F^x forces Nm a to be a square, hence a in F^x E^x2.
  std::int64_t mismatches = 0;
  for (int i = 0; i < ext.class_count(); ++i) {
    const ExtClass a{static_cast<unsigned>(i)};
    bool commutes = true;
    for (int j = 0; j < f.class_count(); ++j) {
      const ExtClass b = ext.embed_class(SquareClass{f.p(), static_cast<unsigned>(j)});
      commutes = commutes && model.form()(a.bits, b.bits) == 0;
    }
    const bool norm_square = ext.norm_class_of(a).is_trivial();
    const bool in_image = nm.field_image.contains(a.bits);
    if (commutes != norm_square || norm_square != in_image) ++mismatches;
  }
  r.check("commutes with F^x iff Nm a is a square iff a in F^x E^x2", 0LL, mismatches);
  return r;
}

Report verify_nonsplit_center(const NonSplitTorusModel& nm) {
  const QuadExt& ext = nm.ext;
  const LocalField& f = ext.base();
  const HeisenbergModel& model = nm.model;
  Report r = make_report("3.5", "centre of the covered E^x is E^x2", f, ext.name());
  r.check("radical dimension", 0LL, model.radical().dim());
  r.check("centre of the model group lies over zero", 0LL, model.center_image().dim());

  std::set<unsigned> norms;
  for (int i = 0; i < ext.class_count(); ++i) norms.insert(ext.norm_class_of(ExtClass{static_cast<unsigned>(i)}).bits);
  r.check("norm group index in F^x/F^x2", 2LL, static_cast<long long>(f.class_count() / norms.size()));

  std::vector<std::string> complement, expected{"1", ext.discriminant().label()};
  std::int64_t d_pairing_failures = 0;
  for (int b = 0; b < f.class_count(); ++b) {
    const SquareClass cb{f.p(), static_cast<unsigned>(b)};
    bool orthogonal = true;
    for (unsigned n : norms) orthogonal = orthogonal && hilbert(f, cb, SquareClass{f.p(), n}).is_plus();
    if (orthogonal) complement.push_back(cb.label());
  }
  for (unsigned n : norms)
    if (!hilbert(f, ext.discriminant(), SquareClass{f.p(), n}).is_plus()) ++d_pairing_failures;
  r.check("orthogonal complement of Nm E^x", join_labels(expected), join_labels(complement));
  r.check("(d, Nm e)_F = 1 for every e", 0LL, d_pairing_failures);
  return r;
}

Report verify_index_identity(const NonSplitTorusModel& nm) {
  const QuadExt& ext = nm.ext;
  const LocalField& f = ext.base();
  Report r = make_report("5.2", "[E^x:E^x2] = [E^x:F^x E^x2]^2", f, ext.name());
  const long long whole = ext.class_count();
  const long long quotient = 1LL << (ext.class_rank() - nm.field_image.dim());
  r.check("[E^x:E^x2]", f.is_dyadic() ? 16LL : 4LL, whole);
  r.check("[E^x:F^x E^x2]", f.is_dyadic() ? 4LL : 2LL, quotient);
  r.check("index identity", std::to_string(whole) + " = " + std::to_string(quotient) + "^2",
          std::to_string(quotient * quotient) + " = " + std::to_string(quotient) + "^2");
  return r;
}

Report verify_nonsplit_structure(const NonSplitTorusModel& nm) {
  Report r = verify_field_image(nm);
  r.lemma_id = "3.4+3.5+5.2";
  r.anchor = "structure of the covered non-split torus";
  r.append(verify_nonsplit_center(nm));
  r.append(verify_index_identity(nm));
  return r;
}

Report verify_central_character_uniqueness(const LocalField& field, const QuadExt& ext) {
  Report r = make_report("5.4", "a genuine irrep is determined by its central character", field, ext.name());
  auto sweep = [&](const std::string& tag, const HeisenbergModel& model) {
    const std::uint32_t characters = std::uint32_t{1} << model.radical().dim();
    r.check(tag + ": genuine irreps equal genuine central characters", static_cast<long long>(characters),
            static_cast<long long>(genuine_irreps(model).size()));
    for (std::uint32_t omega = 0; omega < characters; ++omega)
      r.check(tag + ": irreps over central character " + std::to_string(omega), 1LL,
              static_cast<long long>(decompose_induced_from_center(model, omega).parts.size()));
  };
  sweep("split", build_split_model(field).model);
  sweep("non-split", build_nonsplit_model(ext).model);
  return r;
}

Report verify_E1_identity(const QuadExt& ext, int samples, std::uint64_t seed) {
  const LocalField& f = ext.base();
  const NonSplitTorusModel nm = build_nonsplit_model(ext);
  Report r = make_report("E1", "F^x E^x2 = F^x E^1", f, ext.name());
  std::mt19937_64 rng(seed);
  std::int64_t outside = 0, class_mismatch = 0, square_mismatch = 0;
  std::set<unsigned> hit;
  int done = 0, attempts = 0;
  while (done < samples) {
    if (++attempts > 20 * samples + 20)
      throw Error(ErrorCode::InsufficientPrecision, "too many samples lost to cancellation in " + ext.name());
    try {
      const ExtElement e{random_element(f, rng), rng() % 4 == 0 ? PadicNumber::zero(f) : random_element(f, rng)};
      const ExtElement q = ext.divide(e, ext.conjugate(e));
      const ExtClass cq = ext.classify(q);
      const PadicNumber n = ext.norm(e);
      if (!nm.field_image.contains(cq.bits)) ++outside;
      if (cq != ext.embed_class(classify(f, n))) ++class_mismatch;
      if (!ext.agrees_with(ext.multiply(e, e), ext.multiply(q, ext.embed(n)))) ++square_mismatch;
      hit.insert(cq.bits);
      ++done;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::InsufficientPrecision) throw;
    }
  }
  r.check("e/conj(e) lies in F^x E^x2", 0LL, outside);
  r.check("class of e/conj(e) equals embedded class of Nm e", 0LL, class_mismatch);
  r.check("e^2 = (e/conj(e)) Nm e", 0LL, square_mismatch);

  std::set<unsigned> norm_image;
  for (int i = 0; i < ext.class_count(); ++i)
    norm_image.insert(ext.embed_class(ext.norm_class_of(ExtClass{static_cast<unsigned>(i)})).bits);
  auto labels = [&](const std::set<unsigned>& s) {
    std::vector<std::string> out;
    for (unsigned b : s) out.push_back(ext.label(ExtClass{b}));
    return join_labels(out);
  };
  r.check("classes of E^1 sampled", labels(norm_image), labels(hit));

  std::set<unsigned> product;
  for (unsigned q : hit)
    for (int j = 0; j < f.class_count(); ++j)
      product.insert(q ^ ext.embed_class(SquareClass{f.p(), static_cast<unsigned>(j)}).bits);
  std::set<unsigned> image;
  for (std::uint32_t v : nm.field_image.elements()) image.insert(v);
  r.check("F^x E^1 covers F^x E^x2", labels(image), labels(product));
  return r;
}

Report main_theorem_report(const QuadExt& ext) {
  const LocalField& f = ext.base();
  const NonSplitTorusModel nm = build_nonsplit_model(ext);
  const HeisenbergModel& model = nm.model;
  Report r = make_report("Thm1.1", "each genuine irrep of the covered E^x occurs with multiplicity its dimension",
                         f, ext.name());
  const long long expected_dim = f.is_dyadic() ? 4 : 2;
  const Decomposition d = decompose_induced_from_center(model, 0);
  r.check("genuine irreps in Ind from the centre", 1LL, static_cast<long long>(d.parts.size()));
  r.check("Ind from the centre dimension", static_cast<long long>(ext.class_count()), d.induced_dim);
  long long total = 0;
  for (const auto& [sigma, mult] : d.parts) {
    r.check("dim sigma", expected_dim, sigma.dim);
    r.check("multiplicity of sigma", sigma.dim, mult);
    total += sigma.dim * mult;
  }
  r.check("sum of multiplicity times dimension", static_cast<long long>(ext.class_count()), total);

  const CharacterTable table = brute_force_character_table(model);
  const std::vector<ClassFunction> rows = table.genuine_rows(model);
  r.check("oracle genuine rows", 1LL, static_cast<long long>(rows.size()));
  for (const ClassFunction& row : rows) {
    r.check("oracle multiplicity equals oracle dimension", row[0].re, inner_product(d.induced, row));
    const bool matches = std::any_of(d.parts.begin(), d.parts.end(),
                                     [&](const auto& part) { return part.first.character == row; });
    r.check("induced character equals oracle row", true, matches);
  }

  if (!d.parts.empty()) {
    const auto pieces = restrict_to_isotropic(model, d.parts.front().first, nm.field_image);
    r.check("characters in the restriction to F^x E^x2", expected_dim, static_cast<long long>(pieces.size()));
    bool all_once = true;
    for (const auto& piece : pieces) all_once = all_once && piece.second == 1;
    r.check("each restricted character occurs once", true, all_once);
  }
  return r;
}

Report split_multiplicity_report(const LocalField& field) {
  const SplitTorusModel sm = build_split_model(field);
  const HeisenbergModel& model = sm.model;
  Report r = make_report("7-const", "the genuine irrep of the covered split torus has dimension [F^x:F^x2]",
                         field);
  const std::vector<GenuineIrrep> irreps = genuine_irreps(model);
  r.check("genuine irreps", 1LL, static_cast<long long>(irreps.size()));
  for (const GenuineIrrep& sigma : irreps) r.check("dim sigma", static_cast<long long>(field.class_count()), sigma.dim);
  const Decomposition d = decompose_induced_from_center(model, 0);
  for (const auto& [sigma, mult] : d.parts)
    r.check("multiplicity in Ind from the centre", static_cast<long long>(field.class_count()), mult);
  r.check("oracle genuine rows", 1LL,
          static_cast<long long>(brute_force_character_table(model).genuine_rows(model).size()));
  return r;
}

}  // namespace metabranch
