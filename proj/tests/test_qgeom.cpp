#include <doctest.h>

#include <sstream>

#include "geodef/geom.hpp"
#include "geodef/qgeom.hpp"

using namespace geodef;
using namespace geodef::qgeom;

namespace {

const Rationals kQ;

QAffine from_text(const std::string& text, int d) {
  std::istringstream in(text);
  return parse_qaffine(in, d);
}

}  // namespace

TEST_CASE("named forms") {
  QForm id = qform_identity(2);
  CHECK(id.eval({Rat(3), Rat(4)}) == Rat(25));
  QForm eta = qform_minkowski(2);
  CHECK(eta.eval({Rat(3), Rat(4)}) == Rat(-7));
  CHECK(eta.eval({Rat(1), Rat(1)}).is_zero());
}

TEST_CASE("congruence criterion on the named maps") {
  CHECK(respects_cong(kQ, from_text("1 0 0 1 0 0", 2)));
  // A rational rotation composed with any translation.
  CHECK(respects_cong(kQ, from_text("3/5 -4/5 4/5 3/5 1 -2", 2)));
  // A uniform scaling.
  CHECK(respects_cong(kQ, from_text("2 0 0 2 1 1", 2)));
  // Unequal axis scalings break congruence.
  QAffine squash = from_text("1 0 0 2 0 0", 2);
  CHECK_FALSE(respects_cong(kQ, squash));
  auto w = sampled_cong_witness(kQ, squash, 5);
  REQUIRE(w.has_value());
  REQUIRE(w->points.size() == 4);
  CHECK(geom::semantic_cong(kQ, w->points[0], w->points[1], w->points[2], w->points[3]));
  auto img = [&](const QVec& p) { return affine::apply(kQ, squash, p); };
  CHECK_FALSE(geom::semantic_cong(kQ, img(w->points[0]), img(w->points[1]), img(w->points[2]),
                                  img(w->points[3])));
}

TEST_CASE("lightlike criterion on the named maps") {
  CHECK(respects_lightlike(kQ, from_text("1 0 0 1 0 0", 2)));
  // The boost-like map with c = 1.
  CHECK(respects_lightlike(kQ, from_text("5/4 3/4 3/4 5/4 0 3", 2)));
  // The cone-line swap has c = -1 and is legal in dimension two.
  CHECK(respects_lightlike(kQ, from_text("0 1 1 0 0 0", 2)));
  QAffine squash = from_text("1 0 0 2 0 0", 2);
  CHECK_FALSE(respects_lightlike(kQ, squash));
  auto w = sampled_lightlike_witness(kQ, squash, 5);
  REQUIRE(w.has_value());
  CHECK(geom::semantic_lambda(kQ, w->points[0], w->points[1]));
  CHECK_FALSE(geom::semantic_lambda(kQ, affine::apply(kQ, squash, w->points[0]),
                                    affine::apply(kQ, squash, w->points[1])));
  // The witness the examples name: (1,1) is null, its image (1,2) is not.
  CHECK(geom::semantic_lambda(kQ, QVec{Rat(1), Rat(1)}, QVec{Rat(0), Rat(0)}));
  CHECK_FALSE(geom::semantic_lambda(kQ, affine::apply(kQ, squash, QVec{Rat(1), Rat(1)}),
                                    affine::apply(kQ, squash, QVec{Rat(0), Rat(0)})));
}

TEST_CASE("three dimensions fix the conformal sign") {
  // Reflecting one spacelike axis keeps eta.
  CHECK(respects_lightlike(kQ, from_text("1 0 0 0 1 0 0 0 -1 0 0 0", 3)));
  // Swapping the timelike axis with a spacelike one needs c < 0, which the
  // signature forbids for d = 3.
  CHECK_FALSE(respects_lightlike(kQ, from_text("0 1 0 1 0 0 0 0 1 0 0 0", 3)));
  CHECK(respects_cong(kQ, from_text("0 1 0 1 0 0 0 0 1 0 0 0", 3)));
}

TEST_CASE("translations respect all four relations") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    QMat id;
    id.d = 2;
    id.a = {Rat(1), Rat(0), Rat(0), Rat(1)};
    QAffine t = affine::make_affine(kQ, id, random_point(rng, 2));
    CHECK(respects_cong(kQ, t));
    CHECK(respects_lightlike(kQ, t));
    CHECK(respects_bw(kQ, t));
    QVec p = random_point(rng, 2), q = random_point(rng, 2), r = random_point(rng, 2);
    CHECK(geom::semantic_col(kQ, p, q, r) ==
          geom::semantic_col(kQ, affine::apply(kQ, t, p), affine::apply(kQ, t, q),
                             affine::apply(kQ, t, r)));
  }
}

TEST_CASE("specific betweenness examples survive affine maps") {
  QVec o{Rat(0), Rat(0)}, one{Rat(1), Rat(1)}, two{Rat(2), Rat(2)};
  QAffine doubling = from_text("2 0 0 2 1 1", 2);
  CHECK(geom::semantic_bw(kQ, o, one, two));
  CHECK(geom::semantic_bw(kQ, affine::apply(kQ, doubling, o), affine::apply(kQ, doubling, one),
                          affine::apply(kQ, doubling, two)));

  QAffine shear = from_text("1 1 0 1 0 0", 2);
  std::mt19937_64 rng(33);
  for (int i = 0; i < 1000; ++i) {
    QVec p = random_point(rng, 2), q = random_point(rng, 2), r = random_point(rng, 2);
    if (i % 2 == 0) {
      Rat t = Rat(static_cast<long long>(rng() % 5)) / Rat(4);
      for (int c = 0; c < 2; ++c) q[c] = p[c] + t * (r[c] - p[c]);
    }
    CHECK(geom::semantic_bw(kQ, p, q, r) ==
          geom::semantic_bw(kQ, affine::apply(kQ, shear, p), affine::apply(kQ, shear, q),
                            affine::apply(kQ, shear, r)));
  }
}

TEST_CASE("criterion and sampler agree on random maps") {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 25; ++i) {
    QAffine m = random_affine(rng, kQ, 2);
    CHECK(respects_cong(kQ, m) == !sampled_cong_witness(kQ, m, 100 + i).has_value());
    CHECK(respects_lightlike(kQ, m) == !sampled_lightlike_witness(kQ, m, 200 + i).has_value());
  }
}

TEST_CASE("map text parsing") {
  QAffine m = from_text("1/2 0 0 1 3 -2/3", 2);
  CHECK(m.linear.at(0, 0) == rat(1, 2));
  CHECK(m.translation[1] == rat(-2, 3));
  CHECK_THROWS_AS(from_text("1/2 0 0", 2), Error);
  // A singular matrix is rejected at construction.
  CHECK_THROWS_AS(from_text("1 1 1 1 0 0", 2), Error);
}
