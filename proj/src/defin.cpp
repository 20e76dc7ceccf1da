#include "geodef/defin.hpp"

#include <algorithm>
#include <random>

namespace geodef::defin {

std::optional<ClosureWitness> closure_witness(const geom::ExtRelation& rel,
                                              std::span<const Perm> maps) {
  std::uint64_t u = rel.universe();
  int n = rel.n;
  for (const Perm& m : maps) {
    std::vector<std::uint32_t> tuple(n, 0);
    while (true) {
      std::uint64_t idx = 0;
      std::uint64_t img_idx = 0;
      for (int i = n; i-- > 0;) {
        idx = idx * u + tuple[i];
        img_idx = img_idx * u + m[tuple[i]];
      }
      if (rel.bits.test(idx) && !rel.bits.test(img_idx)) return ClosureWitness{m, tuple};
      int pos = n - 1;
      while (pos >= 0) {
        if (++tuple[pos] < u) break;
        tuple[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
  }
  return std::nullopt;
}

bool is_closed_under(const geom::ExtRelation& rel, std::span<const Perm> maps) {
  return !closure_witness(rel, maps).has_value();
}

geom::ExtRelation orbit_closure(geom::ExtRelation rel, std::span<const Perm> maps) {
  std::uint64_t u = rel.universe();
  int n = rel.n;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Perm& m : maps) {
      std::vector<std::uint32_t> tuple(n, 0);
      while (true) {
        std::uint64_t idx = 0;
        std::uint64_t img_idx = 0;
        for (int i = n; i-- > 0;) {
          idx = idx * u + tuple[i];
          img_idx = img_idx * u + m[tuple[i]];
        }
        if (rel.bits.test(idx) && !rel.bits.test(img_idx)) {
          rel.bits.set(img_idx);
          changed = true;
        }
        int pos = n - 1;
        while (pos >= 0) {
          if (++tuple[pos] < u) break;
          tuple[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
  }
  return rel;
}

bool is_field_definable(const geom::ExtRelation& rel, const Gf& field) {
  auto induced = autgrp::induced_group(field, rel.d);
  for (const auto& [aut, perm] : induced) {
    if (aut.is_identity()) continue;
    std::vector<Perm> one{perm};
    if (!is_closed_under(rel, one)) return false;
  }
  return true;
}

GroupsContext compute_groups(const geom::Geometry& g, std::uint32_t aut_capacity,
                             std::uint64_t affine_capacity, unsigned threads) {
  GroupsContext ctx;
  ctx.aut = autgrp::brute_force_aut(g, aut_capacity, threads);
  std::vector<Perm> aff;
  for (const auto& m : affine::affaut_maps(g, affine_capacity))
    aff.push_back(affine::to_perm(g.field, m, g.d));
  ctx.affaut = autgrp::make_group(static_cast<std::uint32_t>(g.universe()), std::move(aff));
  for (auto& [aut, perm] : autgrp::induced_group(g.field, g.d)) ctx.induced.push_back(perm);
  return ctx;
}

DefinabilityReport theorem1_check(const geom::ExtRelation& rel, const geom::Geometry& g,
                                  const GroupsContext& ctx) {
  if (rel.universe() != g.universe())
    fail(Err::UniverseMismatch, "relation lives on a different point set");
  DefinabilityReport rep;
  rep.field_definable = is_field_definable(rel, g.field);
  rep.witness_aut = closure_witness(rel, ctx.aut.elems);
  rep.closed_under_aut = !rep.witness_aut.has_value();
  rep.witness_affaut = closure_witness(rel, ctx.affaut.elems);
  rep.closed_under_affaut = !rep.witness_affaut.has_value();
  // In finite structures definability in G is exactly closure under all
  // automorphisms of G.
  rep.definable_in_geometry = rep.closed_under_aut;
  rep.clause_ii = rep.field_definable && rep.closed_under_aut;
  rep.clause_iii = rep.field_definable && rep.closed_under_affaut;
  rep.two_element_caveat = g.field.q() <= 2;
  if (rep.two_element_caveat)
    rep.consistent = rep.definable_in_geometry == rep.clause_ii;
  else
    rep.consistent = rep.definable_in_geometry == rep.clause_ii &&
                     rep.clause_ii == rep.clause_iii;
  return rep;
}

const char* cn_order_name(CnOrder v) {
  switch (v) {
    case CnOrder::Equal: return "equal";
    case CnOrder::LeftProperSubset: return "left-proper-subset";
    case CnOrder::RightProperSubset: return "right-proper-subset";
    case CnOrder::Incomparable: return "incomparable";
    case CnOrder::LeftSubset: return "left-subset";
    case CnOrder::RightSubset: return "right-subset";
  }
  return "unknown";
}

namespace {

CnOrder order_from_inclusions(bool left_in_right, bool right_in_left) {
  // Cn(G) subset of Cn(G') iff Aut(G) contains Aut(G').
  if (left_in_right && right_in_left) return CnOrder::Equal;
  if (left_in_right) return CnOrder::LeftProperSubset;
  if (right_in_left) return CnOrder::RightProperSubset;
  return CnOrder::Incomparable;
}

std::optional<ConceptWitness> find_witness(const geom::Geometry& source,
                                           const PointGroup& other_group) {
  for (const geom::NamedRelation& rel : source.rels) {
    if (auto w = closure_witness(rel.ext, other_group.elems))
      return ConceptWitness{rel.name, std::move(*w)};
  }
  return std::nullopt;
}

}  // namespace

ComparisonVerdict compare_concepts(const geom::Geometry& g, const geom::Geometry& g2,
                                   std::uint32_t aut_capacity, std::uint64_t affine_capacity,
                                   unsigned threads) {
  if (!g.field.same_field(g2.field) || g.d != g2.d)
    fail(Err::FieldMismatch, "geometries are over different fields or dimensions");
  if (g.field.q() <= 2)
    fail(Err::TwoElementField, "concept comparison needs a field with more than two elements");

  GroupsContext ca = compute_groups(g, aut_capacity, affine_capacity, threads);
  GroupsContext cb = compute_groups(g2, aut_capacity, affine_capacity, threads);

  bool left_in_right_aff = cb.affaut.subset_of(ca.affaut);
  bool right_in_left_aff = ca.affaut.subset_of(cb.affaut);
  bool left_in_right_aut = cb.aut.subset_of(ca.aut);
  bool right_in_left_aut = ca.aut.subset_of(cb.aut);

  ComparisonVerdict v;
  v.order = order_from_inclusions(left_in_right_aff, right_in_left_aff);
  v.order_via_aut = order_from_inclusions(left_in_right_aut, right_in_left_aut);
  if (v.order != v.order_via_aut)
    fail(Err::InvalidArgument, "affine and full automorphism routes disagree");

  // Cn(G') not inside Cn(G): some primitive of G' is not closed under
  // Aut(G).
  if (!right_in_left_aut) v.missing_left = find_witness(g2, ca.aut);
  if (!left_in_right_aut) v.missing_right = find_witness(g, cb.aut);
  if (!right_in_left_aut && !v.missing_left)
    fail(Err::InvalidArgument, "missing witness for a failed inclusion");
  if (!left_in_right_aut && !v.missing_right)
    fail(Err::InvalidArgument, "missing witness for a failed inclusion");

  // Corroborate a claimed inclusion with orbit-closure spot checks: a
  // sampled low-arity concept of the smaller side must be a concept of
  // the larger. These can only confirm the group verdict.
  auto spot_check = [&](const PointGroup& aut_of_smaller_cn, const PointGroup& aut_of_larger_cn) {
    for (geom::ExtRelation& rel : sample_relations(g.field, g.d, 8, 0x5eed)) {
      geom::ExtRelation concept_rel = orbit_closure(std::move(rel), aut_of_smaller_cn.elems);
      if (!is_closed_under(concept_rel, aut_of_larger_cn.elems))
        fail(Err::InvalidArgument, "orbit-closure spot check refuted a group inclusion");
    }
  };
  if (left_in_right_aut) spot_check(ca.aut, cb.aut);
  if (right_in_left_aut) spot_check(cb.aut, ca.aut);
  return v;
}

HasseResult hasse(const std::vector<std::pair<std::string, geom::Geometry>>& geometries,
                  std::uint64_t affine_capacity) {
  if (geometries.empty()) fail(Err::EmptyDelta, "no geometries given");
  const Gf& field = geometries.front().second.field;
  int d = geometries.front().second.d;
  for (const auto& [name, g] : geometries)
    if (!g.field.same_field(field) || g.d != d)
      fail(Err::FieldMismatch, "geometries are over different fields or dimensions");
  if (field.q() <= 2)
    fail(Err::TwoElementField, "concept comparison needs a field with more than two elements");

  // Concept-set order is the reverse of affine automorphism group
  // inclusion.
  std::vector<PointGroup> groups;
  for (const auto& [name, g] : geometries) {
    std::vector<Perm> aff;
    for (const auto& m : affine::affaut_maps(g, affine_capacity))
      aff.push_back(affine::to_perm(g.field, m, g.d));
    groups.push_back(autgrp::make_group(static_cast<std::uint32_t>(g.universe()), std::move(aff)));
  }

  int n = static_cast<int>(geometries.size());
  std::vector<int> cls(n, -1);
  std::vector<std::vector<std::string>> classes;
  std::vector<int> class_rep;
  for (int i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < classes.size(); ++c)
      if (groups[class_rep[c]] == groups[i]) {
        cls[i] = static_cast<int>(c);
        break;
      }
    if (cls[i] < 0) {
      cls[i] = static_cast<int>(classes.size());
      classes.push_back({});
      class_rep.push_back(i);
    }
    classes[cls[i]].push_back(geometries[i].first);
  }
  for (auto& c : classes) std::sort(c.begin(), c.end());

  // Sort classes by first member name, remapping representatives.
  std::vector<int> order(classes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return classes[x].front() < classes[y].front(); });
  std::vector<std::vector<std::string>> sorted_classes;
  std::vector<int> sorted_rep;
  for (int idx : order) {
    sorted_classes.push_back(std::move(classes[idx]));
    sorted_rep.push_back(class_rep[idx]);
  }

  int m = static_cast<int>(sorted_classes.size());
  // below[i][j]: Cn(class i) strictly inside Cn(class j).
  std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j)
        below[i][j] = groups[sorted_rep[j]].subset_of(groups[sorted_rep[i]]);

  HasseResult out;
  out.classes = std::move(sorted_classes);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (!below[i][j]) continue;
      bool covering = true;
      for (int k = 0; k < m && covering; ++k)
        if (below[i][k] && below[k][j]) covering = false;
      if (covering) out.edges.emplace_back(i, j);
    }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::vector<geom::ExtRelation> sample_relations(const Gf& field, int d, int count,
                                                std::uint64_t seed, bool symmetrize) {
  std::mt19937_64 rng(seed);
  std::vector<geom::ExtRelation> out;
  out.reserve(count);
  auto induced = autgrp::induced_group(field, d);
  std::vector<Perm> frob;
  for (auto& [a, p] : induced)
    if (!a.is_identity()) frob.push_back(p);
  for (int i = 0; i < count; ++i) {
    int arity = (i % 2) + 1;
    geom::ExtRelation rel = geom::make_ext_relation(field, d, arity);
    for (std::uint64_t idx = 0; idx < rel.tuple_space(); ++idx)
      if (rng() & 1) rel.bits.set(idx);
    if (symmetrize && !frob.empty()) rel = orbit_closure(std::move(rel), frob);
    out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace geodef::defin
