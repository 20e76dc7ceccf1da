#include <doctest.h>

#include <random>

#include "geodef/defin.hpp"

using namespace geodef;
using namespace geodef::defin;

namespace {

geom::Geometry affine_gf(int p, int k, int d) {
  Gf f = make_gf(p, k);
  return geom::build_geometry({{"Col", fol::make_rel_symbol(fol::gamma(d), 3, d)}}, f, d);
}

fol::RelSymbol lam2() {
  return fol::make_rel_symbol(fol::parse("(v1 - v3)*(v1 - v3) = (v2 - v4)*(v2 - v4)"), 2, 2);
}

}  // namespace

TEST_CASE("closure witnesses") {
  Gf f3 = make_gf(3, 1);
  geom::ExtRelation diag = geom::materialize(
      fol::make_rel_symbol(fol::parse("v1 = v3 & v2 = v4"), 2, 2), f3, 2);
  std::vector<Perm> perms;
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    Perm p = autgrp::identity_perm(9);
    std::shuffle(p.begin(), p.end(), rng);
    perms.push_back(std::move(p));
  }
  CHECK(is_closed_under(diag, perms));

  geom::ExtRelation origin = geom::make_ext_relation(f3, 2, 1);
  origin.bits.set(0);
  affine::AffineMap<Gf> shift =
      affine::make_affine(f3, affine::Matrix<Gf>::identity(f3, 2), {1, 1});
  std::vector<Perm> one{affine::to_perm(f3, shift, 2)};
  auto w = closure_witness(origin, one);
  REQUIRE(w.has_value());
  CHECK(w->tuple == std::vector<std::uint32_t>{0});
  CHECK(w->map == one[0]);
}

TEST_CASE("orbit closure is idempotent and closed") {
  Gf f3 = make_gf(3, 1);
  std::vector<Perm> group;
  for (const auto& m : affine::enumerate_affine_group(f3, 2))
    group.push_back(affine::to_perm(f3, m, 2));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    geom::ExtRelation rel = geom::make_ext_relation(f3, 2, 2);
    for (std::uint64_t i = 0; i < rel.tuple_space(); ++i)
      if (rng() % 4 == 0) rel.bits.set(i);
    geom::ExtRelation once = orbit_closure(rel, group);
    CHECK(is_closed_under(once, group));
    CHECK(orbit_closure(once, group) == once);
    // Closure only grows.
    for (std::uint64_t i = 0; i < rel.tuple_space(); ++i)
      if (rel.bits.test(i)) CHECK(once.bits.test(i));
  }
}

TEST_CASE("field definability is Frobenius closure") {
  Gf f3 = make_gf(3, 1);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    geom::ExtRelation rel = geom::make_ext_relation(f3, 2, 1);
    for (std::uint64_t i = 0; i < rel.tuple_space(); ++i)
      if (rng() & 1) rel.bits.set(i);
    CHECK(is_field_definable(rel, f3));  // prime field: always
  }

  Gf f4 = make_gf(2, 2);
  geom::ExtRelation omega = geom::make_ext_relation(f4, 2, 1);
  omega.bits.set(2 + 2 * 4);  // the point (omega, omega)
  CHECK_FALSE(is_field_definable(omega, f4));

  geom::ExtRelation col4 =
      geom::materialize(fol::make_rel_symbol(fol::gamma(2), 3, 2), f4, 2);
  CHECK(is_field_definable(col4, f4));
}

TEST_CASE("theorem1_check on the affine geometry over gf(3)^2") {
  geom::Geometry g = affine_gf(3, 1, 2);
  GroupsContext ctx = compute_groups(g);

  geom::ExtRelation diag = geom::materialize(
      fol::make_rel_symbol(fol::parse("v1 = v3 & v2 = v4"), 2, 2), g.field, 2);
  DefinabilityReport all_true = theorem1_check(diag, g, ctx);
  CHECK(all_true.definable_in_geometry);
  CHECK(all_true.clause_ii);
  CHECK(all_true.clause_iii);
  CHECK(all_true.consistent);
  CHECK_FALSE(all_true.two_element_caveat);

  geom::ExtRelation origin = geom::make_ext_relation(g.field, 2, 1);
  origin.bits.set(0);
  DefinabilityReport all_false = theorem1_check(origin, g, ctx);
  CHECK_FALSE(all_false.definable_in_geometry);
  CHECK_FALSE(all_false.clause_ii);
  CHECK_FALSE(all_false.clause_iii);
  CHECK(all_false.consistent);
  CHECK(all_false.witness_aut.has_value());
  CHECK(all_false.witness_affaut.has_value());
}

TEST_CASE("theorem1_check reproduces the two-element counterexample") {
  geom::Geometry fixture = geom::gf2_fixture();
  GroupsContext ctx = compute_groups(fixture);
  geom::ExtRelation ones = geom::make_ext_relation(fixture.field, 3, 1);
  ones.bits.set(7);
  DefinabilityReport rep = theorem1_check(ones, fixture, ctx);
  CHECK(rep.clause_iii);
  CHECK_FALSE(rep.clause_ii);
  CHECK_FALSE(rep.definable_in_geometry);
  CHECK(rep.two_element_caveat);
  CHECK(rep.consistent);
}

TEST_CASE("concept comparison over gf(5)^2") {
  geom::Geometry g1 = affine_gf(5, 1, 2);
  geom::Geometry g2 = geom::build_geometry(
      {{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)}, {"Lam", lam2()}}, g1.field, 2);

  ComparisonVerdict same = compare_concepts(g1, g1);
  CHECK(same.order == CnOrder::Equal);
  CHECK_FALSE(same.missing_left.has_value());
  CHECK_FALSE(same.missing_right.has_value());

  ComparisonVerdict v = compare_concepts(g1, g2);
  CHECK(v.order == CnOrder::LeftProperSubset);
  CHECK(v.order == v.order_via_aut);
  REQUIRE(v.missing_left.has_value());
  CHECK(v.missing_left->relation_name == "Lam");
  CHECK_FALSE(v.missing_right.has_value());
}

TEST_CASE("incomparable geometries have witnesses both ways") {
  Gf f5 = make_gf(5, 1);
  geom::Geometry colored = geom::build_geometry(
      {{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)},
       {"Origin", fol::make_rel_symbol(fol::parse("v1 = 0 & v2 = 0"), 1, 2)}},
      f5, 2);
  geom::Geometry rel5 = geom::build_geometry(
      {{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)}, {"Lam", lam2()}}, f5, 2);

  ComparisonVerdict v = compare_concepts(colored, rel5);
  CHECK(v.order == CnOrder::Incomparable);
  REQUIRE(v.missing_left.has_value());
  REQUIRE(v.missing_right.has_value());
  CHECK(v.missing_left->relation_name == "Lam");
  CHECK(v.missing_right->relation_name == "Origin");
}

TEST_CASE("comparison preconditions") {
  geom::Geometry g3 = affine_gf(3, 1, 2);
  geom::Geometry g5 = affine_gf(5, 1, 2);
  CHECK_THROWS_AS(compare_concepts(g3, g5), Error);

  geom::Geometry fixture = geom::gf2_fixture();
  CHECK_THROWS_AS(compare_concepts(fixture, fixture), Error);
  try {
    compare_concepts(fixture, fixture);
  } catch (const Error& e) {
    CHECK(e.code() == Err::TwoElementField);
  }
}

TEST_CASE("hasse diagrams") {
  geom::Geometry g1 = affine_gf(5, 1, 2);
  geom::Geometry g2 = geom::build_geometry(
      {{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)}, {"Lam", lam2()}}, g1.field, 2);

  HasseResult single = hasse({{"affine", g1}});
  CHECK(single.classes.size() == 1);
  CHECK(single.edges.empty());

  HasseResult chain = hasse({{"affine", g1}, {"affine_lambda", g2}});
  REQUIRE(chain.classes.size() == 2);
  CHECK(chain.edges == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(chain.classes[0] == std::vector<std::string>{"affine"});
  CHECK(chain.classes[1] == std::vector<std::string>{"affine_lambda"});
}

TEST_CASE("syntactically different but equal relation lists collapse") {
  Gf f3 = make_gf(3, 1);
  fol::Formula g = fol::gamma(2);
  fol::RelSymbol col = fol::make_rel_symbol(g, 3, 2);
  fol::RelSymbol col_nn = fol::make_rel_symbol(fol::f_not(fol::f_not(g)), 3, 2);
  fol::RelSymbol col_pad = fol::make_rel_symbol(
      fol::f_and(g, fol::f_eq(fol::t_zero(), fol::t_zero())), 3, 2);

  geom::Geometry a = geom::build_geometry({{"Col", col}}, f3, 2);
  geom::Geometry b = geom::build_geometry({{"Col", col}, {"Col2", col_nn}}, f3, 2);
  geom::Geometry c =
      geom::build_geometry({{"Col", col}, {"Col2", col_nn}, {"Col3", col_pad}}, f3, 2);
  // Duplicate extensions are kept as primitives.
  CHECK(b.rels.size() == 2);
  CHECK(c.rels.size() == 3);
  CHECK(b.rels[0].ext == b.rels[1].ext);

  HasseResult h = hasse({{"a", a}, {"b", b}, {"c", c}});
  REQUIRE(h.classes.size() == 1);
  CHECK(h.classes[0] == std::vector<std::string>{"a", "b", "c"});
  CHECK(h.edges.empty());
}

TEST_CASE("sampled relation corpus is deterministic and symmetrizable") {
  Gf f4 = make_gf(2, 2);
  auto a = sample_relations(f4, 2, 10, 77);
  auto b = sample_relations(f4, 2, 10, 77);
  REQUIRE(a.size() == 10);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(a[0].n == 1);
  CHECK(a[1].n == 2);

  auto c = sample_relations(f4, 2, 10, 77, true);
  for (const auto& rel : c) CHECK(is_field_definable(rel, f4));

  auto d = sample_relations(f4, 2, 10, 78);
  bool any_diff = false;
  for (std::size_t i = 0; i < d.size(); ++i) any_diff = any_diff || !(a[i] == d[i]);
  CHECK(any_diff);
}
