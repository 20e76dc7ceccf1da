#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geodef/autgrp.hpp"
#include "geodef/geom.hpp"

namespace geodef::defin {

using autgrp::Perm;
using autgrp::PointGroup;

struct ClosureWitness {
  Perm map;
  std::vector<std::uint32_t> tuple;
};

/// Forward closure of a relation under every map; nullopt means closed.
/// For a set of maps forming a group this coincides with all maps
/// respecting the relation.
std::optional<ClosureWitness> closure_witness(const geom::ExtRelation& rel,
                                              std::span<const Perm> maps);
bool is_closed_under(const geom::ExtRelation& rel, std::span<const Perm> maps);

/// Smallest superset closed under the maps (fixpoint of image unions).
geom::ExtRelation orbit_closure(geom::ExtRelation rel, std::span<const Perm> maps);

/// Definability over the field, decided by closure under the induced
/// Frobenius maps (finite structures: definable iff automorphism-closed).
bool is_field_definable(const geom::ExtRelation& rel, const Gf& field);

/// Precomputed groups of one geometry, shared by the per-relation checks.
struct GroupsContext {
  PointGroup aut;
  PointGroup affaut;
  std::vector<Perm> induced;
};

GroupsContext compute_groups(const geom::Geometry& g, std::uint32_t aut_capacity = 32,
                             std::uint64_t affine_capacity = 10'000'000,
                             unsigned threads = 1);

struct DefinabilityReport {
  bool definable_in_geometry = false;   // (i)
  bool field_definable = false;
  bool closed_under_aut = false;
  bool closed_under_affaut = false;
  bool clause_ii = false;               // field_definable && closed_under_aut
  bool clause_iii = false;              // field_definable && closed_under_affaut
  std::optional<ClosureWitness> witness_aut;
  std::optional<ClosureWitness> witness_affaut;
  /// (i)<->(ii) always; all three agree when the field has more than two
  /// elements.
  bool consistent = false;
  /// Set over the two-element field, where clause (iii) sits outside the
  /// equivalence hypothesis.
  bool two_element_caveat = false;
};

DefinabilityReport theorem1_check(const geom::ExtRelation& rel, const geom::Geometry& g,
                                  const GroupsContext& ctx);

enum class CnOrder {
  Equal,
  LeftProperSubset,   // Cn(G) strictly inside Cn(G')
  RightProperSubset,  // Cn(G') strictly inside Cn(G)
  Incomparable,
  LeftSubset,   // reserved: non-strict verdicts cannot arise from
  RightSubset,  // explicit finite groups, but belong to the order type
};

const char* cn_order_name(CnOrder v);

struct ConceptWitness {
  std::string relation_name;  // a primitive of one geometry
  ClosureWitness violation;   // ...not closed under the other's group
};

struct ComparisonVerdict {
  CnOrder order = CnOrder::Equal;
  /// Primitive of G' outside Cn(G), present when Cn(G') is not contained
  /// in Cn(G).
  std::optional<ConceptWitness> missing_left;
  /// Primitive of G outside Cn(G').
  std::optional<ConceptWitness> missing_right;
  /// The verdict recomputed from full automorphism groups; must agree
  /// with the affine route.
  CnOrder order_via_aut = CnOrder::Equal;
};

/// Concept-set comparison of two geometries over the same field (more
/// than two elements) and dimension, decided by both group inclusions.
ComparisonVerdict compare_concepts(const geom::Geometry& g, const geom::Geometry& g2,
                                   std::uint32_t aut_capacity = 32,
                                   std::uint64_t affine_capacity = 10'000'000,
                                   unsigned threads = 1);

struct HasseResult {
  /// Geometries with equal concept-sets, one class per node; names sorted
  /// inside a class, classes sorted by first name.
  std::vector<std::vector<std::string>> classes;
  /// Covering edges (src, dst) meaning Cn(src) strictly below Cn(dst).
  std::vector<std::pair<int, int>> edges;
};

HasseResult hasse(const std::vector<std::pair<std::string, geom::Geometry>>& geometries,
                  std::uint64_t affine_capacity = 10'000'000);

/// Seeded pseudo-random relation corpus: arities alternate 1,2,1,2,...;
/// each tuple joins with probability 1/2. With symmetrize, relations are
/// closed under the induced Frobenius maps so every sample is
/// field-definable.
std::vector<geom::ExtRelation> sample_relations(const Gf& field, int d, int count,
                                                std::uint64_t seed, bool symmetrize = false);

}  // namespace geodef::defin
