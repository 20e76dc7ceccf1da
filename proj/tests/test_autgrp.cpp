#include <doctest.h>

#include "geodef/autgrp.hpp"

using namespace geodef;
using namespace geodef::autgrp;

namespace {

geom::Geometry affine_gf(int p, int k, int d) {
  Gf f = make_gf(p, k);
  return geom::build_geometry({{"Col", fol::make_rel_symbol(fol::gamma(d), 3, d)}}, f, d);
}

std::vector<Perm> perms_of(const std::vector<std::pair<FieldAutomorphism, Perm>>& v) {
  std::vector<Perm> out;
  for (const auto& [a, p] : v) out.push_back(p);
  return out;
}

}  // namespace

TEST_CASE("permutation primitives") {
  Perm a = {1, 2, 0};
  Perm b = {0, 2, 1};
  CHECK(compose_perm(a, b) == Perm{1, 0, 2});  // a(b(i))
  CHECK(invert_perm(a) == Perm{2, 0, 1});
  CHECK(compose_perm(a, invert_perm(a)) == identity_perm(3));
}

TEST_CASE("brute force search on the affine geometry over gf(3)^2") {
  geom::Geometry g = affine_gf(3, 1, 2);
  PointGroup aut = brute_force_aut(g);
  CHECK(aut.size() == 432);
  CHECK(satisfies_group_laws(aut));

  std::vector<Perm> aff;
  for (const auto& m : affine::enumerate_affine_group(g.field, 2))
    aff.push_back(affine::to_perm(g.field, m, 2));
  CHECK(aut == make_group(9, aff));
}

TEST_CASE("over gf(2)^3 collinearity admits every permutation") {
  geom::Geometry g = affine_gf(2, 1, 3);
  PointGroup aut = brute_force_aut(g, 32, 2);
  CHECK(aut.size() == 40320);  // 8!
}

TEST_CASE("the colored fixture has exactly the 24 colored-point-fixing maps") {
  geom::Geometry fixture = geom::gf2_fixture();
  PointGroup aut = brute_force_aut(fixture);
  CHECK(aut.size() == 24);
  CHECK(satisfies_group_laws(aut));
  for (const Perm& p : aut.elems) {
    CHECK(p[0] == 0);
    CHECK(p[1] == 1);
    CHECK(p[2] == 2);
    CHECK(p[4] == 4);
  }
}

TEST_CASE("search capacity bound") {
  geom::Geometry g = affine_gf(2, 2, 3);  // 64 points
  CHECK_THROWS_AS(brute_force_aut(g), Error);
}

TEST_CASE("threaded and serial searches agree") {
  geom::Geometry g = affine_gf(2, 2, 2);
  PointGroup serial = brute_force_aut(g, 32, 1);
  PointGroup threaded = brute_force_aut(g, 32, 2);
  CHECK(serial.size() == 5760);
  CHECK(serial == threaded);
}

TEST_CASE("induced maps") {
  Gf f3 = make_gf(3, 1);
  auto ind3 = induced_group(f3, 2);
  REQUIRE(ind3.size() == 1);
  CHECK(ind3[0].second == identity_perm(9));

  Gf f4 = make_gf(2, 2);
  auto ind4 = induced_group(f4, 2);
  REQUIRE(ind4.size() == 2);
  // The nontrivial one sends (omega, 0) to (omega+1, 0): point index 2 to 3.
  CHECK(ind4[1].second[2] == 3);

  // Induced maps respect every materialized field-definable relation.
  geom::Geometry g = geom::build_geometry(
      {{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)},
       {"Lam", fol::make_rel_symbol(
                   fol::parse("(v1 - v3)*(v1 - v3) = (v2 - v4)*(v2 - v4)"), 2, 2)}},
      f4, 2);
  for (const auto& [a, p] : ind4)
    for (const auto& rel : g.rels) CHECK(affine::respects(p, rel.ext).ok);
}

TEST_CASE("composing groups") {
  geom::Geometry g = affine_gf(2, 2, 2);
  Gf f4 = g.field;
  std::vector<Perm> aff;
  for (const auto& m : affine::enumerate_affine_group(f4, 2))
    aff.push_back(affine::to_perm(f4, m, 2));
  PointGroup composed = compose_groups(aff, perms_of(induced_group(f4, 2)), 16);
  CHECK(composed.size() == 5760);
  CHECK(composed == brute_force_aut(g, 32, 2));

  // A composed with the identity is A.
  std::vector<Perm> just_id{identity_perm(16)};
  PointGroup lhs = compose_groups(aff, just_id, 16);
  CHECK(lhs == make_group(16, aff));

  std::vector<Perm> wrong_universe{identity_perm(9)};
  CHECK_THROWS_AS(compose_groups(aff, wrong_universe, 16), Error);
}

TEST_CASE("the fixture splits composition from the full group") {
  geom::Geometry fixture = geom::gf2_fixture();
  std::vector<Perm> aff;
  for (const auto& m : affine::affaut_maps(fixture))
    aff.push_back(affine::to_perm(fixture.field, m, 3));
  PointGroup comp = compose_groups(aff, perms_of(induced_group(fixture.field, 3)), 8);
  CHECK(comp.size() == 1);
  PointGroup aut = brute_force_aut(fixture);
  CHECK(aut.size() == 24);
  CHECK(comp.subset_of(aut));
  CHECK_FALSE(aut.subset_of(comp));
}

TEST_CASE("decomposition over gf(4)^2") {
  geom::Geometry g = affine_gf(2, 2, 2);
  Gf f4 = g.field;

  Decomposition id_dec = decompose(identity_perm(16), g);
  CHECK(id_dec.field_part.exponent == 0);
  CHECK(id_dec.affine_part == affine::affine_identity(f4, 2));

  auto ind = induced_group(f4, 2);
  Decomposition frob_dec = decompose(ind[1].second, g);
  CHECK(frob_dec.field_part.exponent == 1);
  CHECK(frob_dec.affine_part == affine::affine_identity(f4, 2));

  // Every automorphism decomposes and recomposes, uniquely.
  PointGroup aut = brute_force_aut(g, 32, 2);
  for (const Perm& alpha : aut.elems) {
    Decomposition dec = decompose(alpha, g);
    Perm rebuilt =
        compose_perm(affine::to_perm(f4, dec.affine_part, 2), ind[dec.field_part.exponent].second);
    CHECK(rebuilt == alpha);
  }
}

TEST_CASE("decomposition failures") {
  geom::Geometry fixture = geom::gf2_fixture();
  // A 3-cycle on the non-colored points (3 5 6) is an automorphism of the
  // fixture but no affine map realizes it.
  Perm cycle = identity_perm(8);
  cycle[3] = 5;
  cycle[5] = 6;
  cycle[6] = 3;
  CHECK_THROWS_AS(decompose(cycle, fixture), Error);
  try {
    decompose(cycle, fixture);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NoDecomposition);
  }

  // A map that moves a colored point is not an automorphism at all.
  Perm bad = identity_perm(8);
  bad[0] = 1;
  bad[1] = 0;
  CHECK_THROWS_AS(decompose(bad, fixture), Error);
  try {
    decompose(bad, fixture);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotAnAutomorphism);
  }
}

TEST_CASE("perm_as_affine recognizes exactly the affine maps") {
  Gf f3 = make_gf(3, 1);
  for (const auto& m : affine::enumerate_affine_group(f3, 2)) {
    auto back = perm_as_affine(f3, 2, affine::to_perm(f3, m, 2));
    REQUIRE(back.has_value());
    CHECK(*back == m);
  }
  // A transposition of two non-line points is not affine.
  Perm swap = identity_perm(9);
  swap[1] = 3;
  swap[3] = 1;
  CHECK_FALSE(perm_as_affine(f3, 2, swap).has_value());
}
