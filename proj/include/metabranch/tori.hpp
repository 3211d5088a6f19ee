#pragma once

#include <cstdint>

#include "metabranch/heisenberg.hpp"
#include "metabranch/padic.hpp"
#include "metabranch/quadext.hpp"
#include "metabranch/report.hpp"

namespace metabranch {

/// Finite model of the covered diagonal torus: pairs (a, b) of classes of
/// F^x/F^x2 with B((a,b),(c,d)) = h(a,d) + h(c,b), h the additive Hilbert
/// symbol. Coordinates 0..m-1 hold a, m..2m-1 hold b.
struct SplitTorusModel {
  LocalField base;
  HeisenbergModel model;
  int m = 0;

  /// Bits of the pair (a, b) in the model's space.
  std::uint32_t pack(SquareClass a, SquareClass b) const { return a.bits | (b.bits << m); }
  /// {(x, x)}: the image of the centre of GL2.
  Subspace diagonal() const;
};

/// Finite model of the covered non-split torus on E^x/E^x2 with
/// B(a, b) = h_E(a, b) + h_F(Nm a, Nm b).
struct NonSplitTorusModel {
  QuadExt ext;
  HeisenbergModel model;
  /// Image of F^x in E^x/E^x2.
  Subspace field_image;
};

SplitTorusModel build_split_model(const LocalField& field);
NonSplitTorusModel build_nonsplit_model(const QuadExt& ext);

/// The centre of the covered split torus is the squares, and centre-of-GL2
/// times squares is maximal abelian.
Report verify_split_center(const SplitTorusModel& model);

/// (a, b)_E = (Nm a, b)_F over all a in E^x/E^x2, b in F^x/F^x2.
Report verify_norm_compatibility(const QuadExt& ext);

/// F^x E^x2 is maximal abelian in the covered E^x.
Report verify_field_image(const NonSplitTorusModel& model);
/// The centre of the covered E^x is E^x2: trivial radical, and the orthogonal
/// complement of Nm E^x under the Hilbert symbol of F is <F^x2, d>.
Report verify_nonsplit_center(const NonSplitTorusModel& model);
/// [E^x : E^x2] = [E^x : F^x E^x2]^2.
Report verify_index_identity(const NonSplitTorusModel& model);
/// The three reports above, merged.
Report verify_nonsplit_structure(const NonSplitTorusModel& model);

/// Each genuine central character carries exactly one genuine irrep, in both
/// torus models.
Report verify_central_character_uniqueness(const LocalField& field, const QuadExt& ext);

/// F^x E^x2 = F^x E^1, checked on random elements e through e/conj(e).
Report verify_E1_identity(const QuadExt& ext, int samples, std::uint64_t seed);

/// Ind from the centre of the covered E^x contains each genuine irrep with
/// multiplicity equal to its dimension (2 for odd p, 4 over Q_2).
Report main_theorem_report(const QuadExt& ext);

/// The split model has one genuine irrep of dimension [F^x : F^x2], with that
/// multiplicity in Ind from the centre.
Report split_multiplicity_report(const LocalField& field);

}  // namespace metabranch
