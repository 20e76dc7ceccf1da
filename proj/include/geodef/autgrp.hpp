#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "geodef/affine.hpp"
#include "geodef/field.hpp"
#include "geodef/geom.hpp"

namespace geodef::autgrp {

using affine::Perm;

Perm identity_perm(std::uint32_t n);
/// compose(a,b) acts as i -> a[b[i]].
Perm compose_perm(const Perm& a, const Perm& b);
Perm invert_perm(const Perm& a);

/// Explicit set of point bijections, kept sorted for exact set
/// comparisons.
struct PointGroup {
  std::uint32_t universe = 0;
  std::vector<Perm> elems;

  std::size_t size() const { return elems.size(); }
  bool contains(const Perm& p) const;
  bool subset_of(const PointGroup& other) const;
  bool operator==(const PointGroup&) const = default;
};

PointGroup make_group(std::uint32_t universe, std::vector<Perm> elems);

/// Closure, identity and inverse checks, for tests and reports.
bool satisfies_group_laws(const PointGroup& g);

/// Full automorphism group of a finite geometry by backtracking over
/// partial point bijections; prunes on any relation tuple that is fully
/// mapped. Elements come out in lexicographic order.
PointGroup brute_force_aut(const geom::Geometry& g, std::uint32_t max_universe = 32,
                           unsigned threads = 1);

/// The componentwise action of each field automorphism on F^d, in
/// Frobenius exponent order.
std::vector<std::pair<FieldAutomorphism, Perm>> induced_group(const Gf& field, int d);

/// Pointwise composition {a o b : a in A, b in B}, deduplicated.
PointGroup compose_groups(std::span<const Perm> a, std::span<const Perm> b,
                          std::uint32_t universe);

struct Decomposition {
  affine::AffineMap<Gf> affine_part;
  FieldAutomorphism field_part;
};

/// Splits an automorphism of a field-definable geometry into an affine
/// automorphism following an induced field automorphism. Unique when the
/// field has more than two elements.
Decomposition decompose(const Perm& alpha, const geom::Geometry& g);

/// Extracts (L, t) from a point permutation when it is affine.
std::optional<affine::AffineMap<Gf>> perm_as_affine(const Gf& field, int d, const Perm& perm);

}  // namespace geodef::autgrp
