#include <doctest.h>

#include <sstream>

#include "geodef/specio.hpp"
#include "geodef/translate.hpp"
#include "geodef/verify.hpp"

using namespace geodef;
using namespace geodef::translate;

namespace {

SymbolBinding col_binding() {
  SymbolBinding b;
  b.d = 2;
  b.sigma.emplace("Col", fol::make_rel_symbol(fol::gamma(2), 3, 2));
  return b;
}

geom::Geometry affine3() {
  Gf f3 = make_gf(3, 1);
  return geom::build_geometry({{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)}}, f3, 2);
}

}  // namespace

TEST_CASE("the equality clause expands to a coordinate block") {
  CHECK(tr(fol::parse("v1 = v2"), col_binding()) == fol::parse("v1 = v3 & v2 = v4"));
  // A symbol-free tautology stays the same tautology over field variables.
  CHECK(tr(fol::parse("v1 = v1"), col_binding()) == fol::parse("v1 = v1 & v2 = v2"));
}

TEST_CASE("the quantifier clause introduces one field quantifier per coordinate") {
  fol::Formula out = tr(fol::parse("exists v2 Col(v1, v2, v2)"), col_binding());
  REQUIRE(out.kind == fol::FormulaKind::Exists);
  CHECK(out.var == 3);
  REQUIRE(out.kids[0].kind == fol::FormulaKind::Exists);
  CHECK(out.kids[0].var == 4);
  // The body is gamma with its second and third point blocks both moved to
  // the block of geometry variable 2.
  fol::Formula expected = fol::substitute(
      fol::gamma(2), {{3, fol::t_var(3)}, {4, fol::t_var(4)}, {5, fol::t_var(3)},
                      {6, fol::t_var(4)}});
  CHECK(out.kids[0].kids[0] == expected);
}

TEST_CASE("connective clauses run through the primitive definitions") {
  SymbolBinding b = col_binding();
  fol::Formula disj = tr(fol::parse("v1 = v2 | v2 = v3"), b);
  // or is not(and(not, not))
  CHECK(disj.kind == fol::FormulaKind::Not);
  CHECK(disj.kids[0].kind == fol::FormulaKind::And);
  fol::Formula univ = tr(fol::parse("forall v1 v1 = v1"), b);
  CHECK(univ.kind == fol::FormulaKind::Not);
  CHECK(univ.kids[0].kind == fol::FormulaKind::Exists);
}

TEST_CASE("translation rejects unknown symbols and non-variable arguments") {
  SymbolBinding b = col_binding();
  CHECK_THROWS_AS(tr(fol::parse("Between(v1, v2, v3)"), b), Error);
  try {
    tr(fol::parse("Between(v1, v2, v3)"), b);
  } catch (const Error& e) {
    CHECK(e.code() == Err::UnboundSymbol);
  }
  CHECK_THROWS_AS(tr(fol::parse("Col(v1, v2)"), b), Error);
  CHECK_THROWS_AS(tr(fol::parse("Col(v1 + v2, v1, v1)"), b), Error);
  CHECK_THROWS_AS(tr(fol::parse("v1 <= v2"), b), Error);
}

TEST_CASE("free field variables stay within the blocks of free geometry variables") {
  std::istringstream in(verify::tr_corpus_text());
  specio::StanzaFile corpus = specio::parse_stanza_file(in);
  SymbolBinding b = col_binding();
  for (const specio::Stanza& st : corpus.stanzas) {
    fol::Formula g = fol::parse(st.formula_text);
    fol::Formula f = tr(g, b);
    std::set<int> blocks;
    for (int gv : fol::free_vars(g))
      for (int c = 0; c < b.d; ++c) blocks.insert(1 + (gv - 1) * b.d + c);
    for (int fv : fol::free_vars(f)) {
      CAPTURE(st.name);
      CHECK(blocks.count(fv) == 1);
    }
  }
  // Spot checks where the whole block must appear.
  CHECK(fol::free_vars(tr(fol::parse("v1 = v1"), b)) == std::set<int>{1, 2});
  CHECK(fol::free_vars(tr(fol::parse("Col(v1, v1, v1)"), b)) == std::set<int>{1, 2});
}

TEST_CASE("translation commutes with renaming bound geometry variables") {
  SymbolBinding b = col_binding();
  fol::Formula one = tr(fol::parse("exists v2 Col(v1, v2, v2)"), b);
  fol::Formula two = tr(fol::parse("exists v5 Col(v1, v5, v5)"), b);
  CHECK(fol::alpha_equal(one, two));
  CHECK_FALSE(one == two);
}

TEST_CASE("verify_tr sweeps all assignments") {
  geom::Geometry g = affine3();
  SymbolBinding b = col_binding();

  TrVerification sentence = verify_tr(fol::parse("forall v1 Col(v1, v1, v1)"), b, g);
  CHECK(sentence.ok);
  CHECK(sentence.assignments_checked == 1);

  TrVerification open = verify_tr(fol::parse("exists v3 Col(v1, v2, v3)"), b, g);
  CHECK(open.ok);
  CHECK(open.exhaustive);
  CHECK(open.assignments_checked == 81);
}

TEST_CASE("verify_tr falls back to sampling above the bound") {
  geom::Geometry g = affine3();
  SymbolBinding b = col_binding();
  TrOptions opts;
  opts.exhaustive_bound = 8;
  opts.sample_budget = 37;
  TrVerification v = verify_tr(fol::parse("Col(v1, v2, v3)"), b, g, opts);
  CHECK(v.ok);
  CHECK_FALSE(v.exhaustive);
  CHECK(v.assignments_checked == 37);
}

TEST_CASE("a corrupted binding is refuted with a concrete assignment") {
  geom::Geometry g = affine3();
  SymbolBinding corrupted;
  corrupted.d = 2;
  corrupted.sigma.emplace("Col",
                          fol::make_rel_symbol(fol::f_not(fol::gamma(2)), 3, 2));
  TrVerification v = verify_tr(fol::parse("Col(v1, v1, v1)"), corrupted, g);
  CHECK_FALSE(v.ok);
  CHECK(v.counterexample.size() == 1);
  CHECK(v.free_geometry_vars == std::vector<int>{1});
}
