#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "geodef/affine.hpp"
#include "geodef/field.hpp"

namespace geodef::qgeom {

using QMat = affine::Matrix<Rationals>;
using QVec = affine::Vec<Rationals>;
using QAffine = affine::AffineMap<Rationals>;

/// Symmetric bilinear form given by a d x d rational matrix.
struct QForm {
  QMat m;

  Rat eval(const QVec& v) const;
};

/// Identity form; its difference equality is the congruence relation.
QForm qform_identity(int d);
/// diag(1,-1,...,-1); its null condition is lightlike relatedness.
QForm qform_minkowski(int d);

/// Affine maps preserve line parameters, so betweenness is always
/// respected; checked-and-true by construction, sampled in tests.
bool respects_bw(const Rationals& field, const QAffine& a);

/// L^T L = c I for a positive rational c: exactly the maps under which
/// equality of squared distances is preserved.
bool respects_cong(const Rationals& field, const QAffine& a);

/// L^T eta L = c eta for a nonzero rational c, re-checked directly on
/// basis null vectors (which also settles the sign question in dimension
/// two, where a cone-line swap gives negative c).
bool respects_lightlike(const Rationals& field, const QAffine& a);

struct SampledWitness {
  /// Flattened points of a tuple in the relation whose image is not.
  std::vector<QVec> points;
};

/// Deterministic probe + seeded random search for a congruent pair of
/// segments whose images break congruence; nullopt when the budget finds
/// nothing.
std::optional<SampledWitness> sampled_cong_witness(const Rationals& field, const QAffine& a,
                                                   std::uint64_t seed, int budget = 10'000);
std::optional<SampledWitness> sampled_lightlike_witness(const Rationals& field, const QAffine& a,
                                                        std::uint64_t seed, int budget = 10'000);

/// Seeded random rational scalars/points/invertible maps for the property
/// suites; numerators in a small window, denominators in 1..8.
Rat random_rat(std::mt19937_64& rng);
QVec random_point(std::mt19937_64& rng, int d);
QAffine random_affine(std::mt19937_64& rng, const Rationals& field, int d);

/// Reads d rows of d rationals, then the translation row.
QAffine parse_qaffine(std::istream& is, int d);

}  // namespace geodef::qgeom
