#include <doctest.h>

#include <random>
#include <sstream>

#include "geodef/geom.hpp"

using namespace geodef;
using namespace geodef::geom;

TEST_CASE("flatten and unflatten are mutually inverse") {
  std::vector<std::vector<int>> pts = {{1, 2}, {3, 4}};
  CHECK(flatten(pts) == std::vector<int>{1, 2, 3, 4});
  CHECK(unflatten(std::vector<int>{1, 2, 3, 4}, 2) == pts);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + static_cast<int>(rng() % 3);
    int n = 1 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> tuple(n, std::vector<int>(d));
    for (auto& p : tuple)
      for (int& c : p) c = static_cast<int>(rng() % 100);
    CHECK(unflatten(flatten(tuple), d) == tuple);
  }
  CHECK_THROWS_AS(unflatten(std::vector<int>{1, 2, 3}, 2), Error);
}

TEST_CASE("point indexing is a bijection") {
  for (auto [p, k, d] : {std::tuple{3, 1, 2}, {2, 2, 2}, {5, 1, 3}}) {
    Gf f = make_gf(p, k);
    std::uint64_t u = point_count(f, d);
    std::vector<bool> seen(u, false);
    for (std::uint32_t i = 0; i < u; ++i) {
      Point<Gf> pt = index_point(f, d, i);
      CHECK(point_index(f, pt) == i);
      CHECK_FALSE(seen[i]);
      seen[i] = true;
    }
  }
}

TEST_CASE("semantic collinearity over gf(3)") {
  Gf f3 = make_gf(3, 1);
  using P = Point<Gf>;
  CHECK(semantic_col(f3, P{0, 0}, P{1, 1}, P{2, 2}));
  CHECK_FALSE(semantic_col(f3, P{0, 0}, P{1, 0}, P{0, 1}));
  // r = p makes any q collinear.
  CHECK(semantic_col(f3, P{1, 2}, P{0, 0}, P{1, 2}));
}

TEST_CASE("betweenness over the rationals") {
  Rationals q;
  using P = std::vector<Rat>;
  P o{Rat(0), Rat(0)};
  P one{Rat(1), Rat(1)};
  P two{Rat(2), Rat(2)};
  CHECK(semantic_bw(q, o, one, two));        // parameter 1/2
  CHECK_FALSE(semantic_bw(q, o, two, one));  // parameter 2 falls outside [0,1]
  CHECK(semantic_bw(q, o, o, o));
  CHECK_FALSE(semantic_bw(q, o, one, o));
  CHECK(semantic_col(q, o, two, one));
  CHECK_FALSE(semantic_col(q, o, P{1, 0}, P{0, 1}));

  Gf f3 = make_gf(3, 1);
  using G = Point<Gf>;
  CHECK_THROWS_AS(semantic_bw(f3, G{0, 0}, G{1, 1}, G{2, 2}), Error);
}

TEST_CASE("congruence and lightlikeness") {
  Rationals q;
  using P = std::vector<Rat>;
  CHECK(semantic_cong(q, P{Rat(0), Rat(0)}, P{Rat(3), Rat(4)}, P{Rat(0), Rat(0)},
                      P{Rat(5), Rat(0)}));
  CHECK_FALSE(semantic_cong(q, P{Rat(0), Rat(0)}, P{Rat(1), Rat(1)}, P{Rat(0), Rat(0)},
                            P{Rat(2), Rat(0)}));
  CHECK_FALSE(semantic_lambda(q, P{Rat(0), Rat(0)}, P{Rat(1), Rat(2)}));
  CHECK(semantic_lambda(q, P{Rat(0), Rat(0)}, P{Rat(1), Rat(1)}));

  Gf f5 = make_gf(5, 1);
  using G = Point<Gf>;
  CHECK(semantic_lambda(f5, G{0, 0}, G{1, 1}));
  CHECK(semantic_lambda(f5, G{0, 0}, G{2, 3}));  // 4 = 9 mod 5
}

TEST_CASE("collinearity from the betweenness disjunction over the rationals") {
  Rationals q;
  std::mt19937_64 rng(17);
  auto rnd = [&] {
    return Rat(Rat::Int(static_cast<long long>(rng() % 13) - 6),
               Rat::Int(1 + static_cast<long long>(rng() % 4)));
  };
  for (int i = 0; i < 1000; ++i) {
    std::vector<Rat> p{rnd(), rnd()}, qq{rnd(), rnd()}, r{rnd(), rnd()};
    if (i % 2 == 0) {
      Rat t = rnd();
      for (int c = 0; c < 2; ++c) qq[c] = p[c] + t * (r[c] - p[c]);
    }
    bool direct = semantic_col(q, p, qq, r);
    bool via = semantic_bw(q, p, qq, r) || semantic_bw(q, qq, p, r) || semantic_bw(q, p, r, qq);
    CHECK(direct == via);
  }
}

TEST_CASE("materializing the diagonal") {
  Gf f3 = make_gf(3, 1);
  fol::RelSymbol diag = fol::make_rel_symbol(fol::parse("v1 = v3 & v2 = v4"), 2, 2);
  ExtRelation ext = materialize(diag, f3, 2);
  CHECK(ext.bits.count() == 9);
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b) {
      std::uint32_t t[2] = {a, b};
      CHECK(ext.test_points(t) == (a == b));
    }
}

TEST_CASE("materializing over the rationals is rejected") {
  Rationals q;
  fol::RelSymbol diag = fol::make_rel_symbol(fol::parse("v1 = v3 & v2 = v4"), 2, 2);
  CHECK_THROWS_AS(materialize(diag, q, 2), Error);
}

TEST_CASE("gamma materializes to semantic collinearity on gf(3)^2") {
  Gf f3 = make_gf(3, 1);
  ExtRelation ext = materialize(fol::make_rel_symbol(fol::gamma(2), 3, 2), f3, 2);
  for (std::uint32_t a = 0; a < 9; ++a)
    for (std::uint32_t b = 0; b < 9; ++b)
      for (std::uint32_t c = 0; c < 9; ++c) {
        std::uint32_t t[3] = {a, b, c};
        bool sem = semantic_col(f3, index_point(f3, 2, a), index_point(f3, 2, b),
                                index_point(f3, 2, c));
        CHECK(ext.test_points(t) == sem);
      }
}

TEST_CASE("capacity bound on materialization") {
  Gf f2 = make_gf(2, 1);
  CHECK_THROWS_AS(make_ext_relation(f2, 2, 16), Error);  // 2^32 bits
  try {
    make_ext_relation(f2, 2, 16);
  } catch (const Error& e) {
    CHECK(e.code() == Err::CapacityExceeded);
  }
}

TEST_CASE("build_geometry flags the explicit key relation") {
  Gf f3 = make_gf(3, 1);
  Geometry g =
      build_geometry({{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)}}, f3, 2);
  CHECK(g.universe() == 9);
  CHECK(g.key_relation_listed);
  CHECK(g.find("Col") != nullptr);
  CHECK(g.find("Bw") == nullptr);

  Geometry g2 = build_geometry(
      {{"Diag", fol::make_rel_symbol(fol::parse("v1 = v3 & v2 = v4"), 2, 2)}}, f3, 2);
  CHECK_FALSE(g2.key_relation_listed);

  CHECK_THROWS_AS(build_geometry({}, f3, 2), Error);
}

TEST_CASE("the two-element fixture colors four points") {
  Geometry g = gf2_fixture();
  CHECK(g.universe() == 8);
  REQUIRE(g.rels.size() == 4);
  for (const NamedRelation& r : g.rels) CHECK(r.ext.bits.count() == 1);
  std::uint32_t o[1] = {0};
  CHECK(g.find("O")->ext.test_points(o));
  std::uint32_t ux[1] = {1};
  CHECK(g.find("Ux")->ext.test_points(ux));
  std::uint32_t uy[1] = {2};
  CHECK(g.find("Uy")->ext.test_points(uy));
  std::uint32_t uz[1] = {4};
  CHECK(g.find("Uz")->ext.test_points(uz));
}

TEST_CASE("evaluation over a geometry") {
  Gf f3 = make_gf(3, 1);
  Geometry g = build_geometry({{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)}}, f3, 2);
  fol::Env env = fol::make_env(3);
  for (int p = 0; p < 9; ++p) {
    env[1] = p;
    CHECK(eval_geom(fol::parse("exists v2 Col(v1, v2, v2)"), g, env));
    CHECK(eval_geom(fol::parse("Col(v1, v1, v1)"), g, env));
  }
  env[1] = 0;
  env[2] = 1;
  CHECK_FALSE(eval_geom(fol::parse("v1 = v2"), g, env));
  CHECK_THROWS_AS(eval_geom(fol::parse("Missing(v1)"), g, env), Error);
  CHECK_THROWS_AS(eval_geom(fol::parse("Col(v1, v2)"), g, env), Error);
  CHECK_THROWS_AS(eval_geom(fol::parse("v1 <= v2"), g, env), Error);
  CHECK_THROWS_AS(eval_geom(fol::parse("v1 + v2 = v1"), g, env), Error);
}

TEST_CASE("relation serialization round-trips bit-exactly") {
  Gf f4 = make_gf(2, 2);
  ExtRelation rel = make_ext_relation(f4, 2, 2);
  std::mt19937_64 rng(11);
  for (std::uint64_t i = 0; i < rel.tuple_space(); ++i)
    if (rng() & 1) rel.bits.set(i);

  std::ostringstream out(std::ios::binary);
  save_ext_relation(out, rel, f4);
  std::string bytes = out.str();
  // header: q=4, k=2, d=2, n=2, little-endian u32 each
  REQUIRE(bytes.size() >= 16);
  CHECK(static_cast<unsigned char>(bytes[0]) == 4);
  CHECK(static_cast<unsigned char>(bytes[4]) == 2);
  CHECK(static_cast<unsigned char>(bytes[8]) == 2);
  CHECK(static_cast<unsigned char>(bytes[12]) == 2);
  CHECK(bytes.size() == 16 + (rel.tuple_space() + 7) / 8);

  std::istringstream in(bytes, std::ios::binary);
  ExtRelation back = load_ext_relation(in, f4);
  CHECK(back == rel);

  Gf f3 = make_gf(3, 1);
  std::istringstream in2(bytes, std::ios::binary);
  CHECK_THROWS_AS(load_ext_relation(in2, f3), Error);
}
