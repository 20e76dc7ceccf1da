#include <doctest.h>

#include <random>

#include "geodef/field.hpp"

using namespace geodef;

TEST_CASE("gf(3) arithmetic is mod 3") {
  Gf f = make_gf(3, 1);
  CHECK(f.q() == 3);
  CHECK(f.add(1, 2) == 0);
  CHECK(f.mul(2, 2) == 1);
  CHECK(f.neg(1) == 2);
}

TEST_CASE("gf(4) uses the only irreducible monic quadratic") {
  Gf f = make_gf(2, 2);
  CHECK(f.q() == 4);
  CHECK(f.modulus() == std::vector<int>{1, 1, 1});  // x^2 + x + 1
  // omega is the element with index 2; omega * omega = omega + 1.
  CHECK(f.mul(2, 2) == 3);
  CHECK(f.add(2, 1) == 3);
}

TEST_CASE("make_gf rejects composite characteristic") {
  CHECK_THROWS_WITH_AS(make_gf(4, 1), doctest::Contains("NotPrime"), Error);
}

TEST_CASE("make_gf rejects a reducible modulus") {
  // x^2 + 1 = (x+1)^2 over gf(2).
  CHECK_THROWS_AS(make_gf(2, 2, std::vector<int>{1, 0, 1}), Error);
  try {
    make_gf(2, 2, std::vector<int>{1, 0, 1});
  } catch (const Error& e) {
    CHECK(e.code() == Err::ReducibleModulus);
  }
}

TEST_CASE("irreducibility by exhaustive factor check") {
  CHECK_FALSE(is_irreducible(std::vector<int>{1, 0, 1}, 2));  // x^2+1 over gf(2)
  CHECK(is_irreducible(std::vector<int>{1, 0, 1}, 3));        // x^2+1 over gf(3)
  CHECK(is_irreducible(std::vector<int>{1, 1, 0, 1}, 2));     // x^3+x+1 over gf(2)
  // x^4 + x^2 + 1 = (x^2+x+1)^2 over gf(2): no roots, but reducible.
  CHECK_FALSE(is_irreducible(std::vector<int>{1, 0, 1, 0, 1}, 2));
}

TEST_CASE("field axioms hold exhaustively for q <= 9") {
  for (auto [p, k] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    Gf f = make_gf(p, k);
    INFO("field ", f.name());
    for (int a = 0; a < f.q(); ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.mul(a, 0) == 0);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
      for (int b = 0; b < f.q(); ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        for (int c = 0; c < f.q(); ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("inverse of zero is rejected") {
  Gf f = make_gf(3, 1);
  CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_CASE("frobenius group has k automorphisms and is cyclic") {
  CHECK(frobenius_group(make_gf(3, 1)).size() == 1);

  Gf f4 = make_gf(2, 2);
  auto auts4 = frobenius_group(f4);
  REQUIRE(auts4.size() == 2);
  CHECK(auts4[0].is_identity());
  CHECK(auts4[1].apply(f4, 2) == 3);  // omega -> omega + 1

  Gf f9 = make_gf(3, 2);
  auto auts9 = frobenius_group(f9);
  REQUIRE(auts9.size() == 2);
  for (int a = 0; a < f9.q(); ++a)
    CHECK(auts9[1].apply(f9, static_cast<Gf::Elem>(a)) == f9.pow(static_cast<Gf::Elem>(a), 3));

  // Composition table is cyclic of order k (k = 3 for gf(8)).
  Gf f8 = make_gf(2, 3);
  auto auts8 = frobenius_group(f8);
  REQUIRE(auts8.size() == 3);
  for (std::size_t e = 0; e < 3; ++e)
    for (std::size_t g = 0; g < 3; ++g)
      for (int a = 0; a < f8.q(); ++a) {
        Gf::Elem via = auts8[e].apply(f8, auts8[g].apply(f8, static_cast<Gf::Elem>(a)));
        CHECK(via == auts8[(e + g) % 3].apply(f8, static_cast<Gf::Elem>(a)));
      }
}

TEST_CASE("automorphisms respect the field structure exhaustively") {
  for (auto [p, k] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    Gf f = make_gf(p, k);
    for (const FieldAutomorphism& a : frobenius_group(f)) {
      CHECK(a.apply(f, 0) == 0);
      CHECK(a.apply(f, 1) == 1);
      std::vector<bool> seen(f.q(), false);
      for (int x = 0; x < f.q(); ++x) {
        Gf::Elem y = a.apply(f, static_cast<Gf::Elem>(x));
        CHECK_FALSE(seen[y]);
        seen[y] = true;
        for (int z = 0; z < f.q(); ++z) {
          CHECK(a.apply(f, f.add(x, z)) == f.add(a.apply(f, x), a.apply(f, z)));
          CHECK(a.apply(f, f.mul(x, z)) == f.mul(a.apply(f, x), a.apply(f, z)));
        }
      }
    }
  }
}

TEST_CASE("element coefficient encoding round-trips") {
  Gf f = make_gf(3, 2);
  for (int a = 0; a < f.q(); ++a) {
    auto c = f.coeffs(static_cast<Gf::Elem>(a));
    CHECK(f.from_coeffs(c) == a);
  }
}

TEST_CASE("rationals normalize to lowest terms") {
  CHECK(rat(2, 4).num() == 1);
  CHECK(rat(2, 4).den() == 2);
  CHECK(rat(-2, -4) == rat(1, 2));
  CHECK(rat(2, -4).num() == -1);
  CHECK((rat(1, 3) + rat(1, 6)) == rat(1, 2));
  CHECK_THROWS_AS(rat(1, 0), Error);
}

TEST_CASE("rational order and field operations") {
  CHECK(rat(1, 3) < rat(1, 2));
  CHECK(rat(-1, 2) <= rat(0, 1));
  CHECK((rat(3, 4) * rat(4, 3)) == Rat(1));
  CHECK((rat(1, 2) / rat(1, 4)) == Rat(2));
  CHECK_THROWS_AS(Rat(1) / Rat(0), Error);
  CHECK((-rat(1, 2)).num() == -1);
}

TEST_CASE("rational arithmetic agrees with the integers on denominator 1") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    long long a = static_cast<long long>(rng() % 2001) - 1000;
    long long b = static_cast<long long>(rng() % 2001) - 1000;
    CHECK((Rat(a) + Rat(b)) == Rat(a + b));
    CHECK((Rat(a) - Rat(b)) == Rat(a - b));
    CHECK((Rat(a) * Rat(b)) == Rat(a * b));
    CHECK((Rat(a) <= Rat(b)) == (a <= b));
  }
}

TEST_CASE("rational text form parses back") {
  CHECK(parse_rat("3/5") == rat(3, 5));
  CHECK(parse_rat("-2") == Rat(-2));
  CHECK(parse_rat("-6/4") == rat(-3, 2));
  CHECK(parse_rat(rat(22, 7).str()) == rat(22, 7));
  CHECK_THROWS_AS(parse_rat("x"), Error);
}
