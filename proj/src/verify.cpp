#include "geodef/verify.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <sstream>

#include "geodef/affine.hpp"
#include "geodef/autgrp.hpp"
#include "geodef/defin.hpp"
#include "geodef/field.hpp"
#include "geodef/fol.hpp"
#include "geodef/geom.hpp"
#include "geodef/qgeom.hpp"
#include "geodef/specio.hpp"
#include "geodef/translate.hpp"
#include "geodef/util.hpp"

namespace geodef::verify {

namespace {

using autgrp::Perm;
using autgrp::PointGroup;

struct CheckResult {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
  void note(const std::string& s) {
    if (pass) detail = s;
  }
};

geom::Geometry affine_geometry(const Gf& field, int d) {
  return geom::build_geometry({{"Col", fol::make_rel_symbol(fol::gamma(d), 3, d)}}, field, d);
}

fol::RelSymbol lambda_symbol(int d) {
  using namespace fol;
  Term lhs = t_sub(t_var(1), t_var(d + 1));
  Term sum = t_mul(t_sub(t_var(2), t_var(d + 2)), t_sub(t_var(2), t_var(d + 2)));
  for (int i = 3; i <= d; ++i) {
    Term diff = t_sub(t_var(i), t_var(d + i));
    sum = t_add(std::move(sum), t_mul(diff, diff));
  }
  return make_rel_symbol(f_eq(t_mul(lhs, lhs), std::move(sum)), 2, d);
}

fol::RelSymbol diagonal_symbol(int d) {
  using namespace fol;
  std::vector<Formula> eqs;
  for (int c = 1; c <= d; ++c) eqs.push_back(f_eq(t_var(c), t_var(d + c)));
  return make_rel_symbol(conjoin(std::move(eqs)), 2, d);
}

std::vector<Perm> induced_perms(const Gf& field, int d) {
  std::vector<Perm> out;
  for (auto& [a, p] : autgrp::induced_group(field, d)) out.push_back(p);
  return out;
}

PointGroup affaut_group(const geom::Geometry& g) {
  std::vector<Perm> perms;
  for (const auto& m : affine::affaut_maps(g)) perms.push_back(affine::to_perm(g.field, m, g.d));
  return autgrp::make_group(static_cast<std::uint32_t>(g.universe()), std::move(perms));
}

void set_frame_env(fol::Env& env, std::uint64_t frame, int q, int nvars) {
  for (int v = 1; v <= nvars; ++v) {
    env[v] = static_cast<std::int32_t>(frame % q);
    frame /= q;
  }
}

// ---- gf2-counterexample ----

CheckResult check_gf2(const Options&) {
  CheckResult r;
  geom::Geometry g = geom::gf2_fixture();
  defin::GroupsContext ctx = defin::compute_groups(g);
  r.require(ctx.affaut.size() == 1, "expected a trivial affine automorphism group");
  r.require(ctx.affaut.contains(autgrp::identity_perm(8)), "affine group must be {Id}");
  r.require(ctx.aut.size() == 24,
            "expected 24 automorphisms, got " + std::to_string(ctx.aut.size()));

  geom::ExtRelation ones = geom::make_ext_relation(g.field, 3, 1);
  ones.bits.set(7);  // the point (1,1,1)
  defin::DefinabilityReport rep = defin::theorem1_check(ones, g, ctx);
  r.require(rep.clause_iii && !rep.clause_ii && !rep.definable_in_geometry,
            "the {(1,1,1)} relation must satisfy (iii) but not (i) or (ii)");
  r.require(rep.two_element_caveat && rep.consistent, "report must be consistent with the caveat");

  for (std::uint32_t mask = 0; mask < 256; ++mask) {
    geom::ExtRelation rel = geom::make_ext_relation(g.field, 3, 1);
    for (int b = 0; b < 8; ++b)
      if (mask & (1u << b)) rel.bits.set(b);
    defin::DefinabilityReport rr = defin::theorem1_check(rel, g, ctx);
    r.require(rr.definable_in_geometry == rr.clause_ii,
              "clauses (i) and (ii) diverged on unary relation " + std::to_string(mask));
  }
  r.note("affaut {Id}; |aut| = 24; (iii) without (i) on {(1,1,1)}; 256 unary relations consistent");
  return r;
}

// ---- fundamental-thm ----

CheckResult check_fundamental(const Options& opts) {
  CheckResult r;
  struct Case {
    int p, k, d;
    std::uint64_t expected;
  };
  const Case cases[] = {{3, 1, 2, 432}, {2, 2, 2, 5760}, {5, 1, 2, 12000}, {3, 1, 3, 303264}};
  std::string sizes;
  for (const Case& c : cases) {
    Gf field = make_gf(c.p, c.k);
    geom::Geometry g = affine_geometry(field, c.d);
    PointGroup bf = autgrp::brute_force_aut(g, 32, opts.threads);

    std::vector<Perm> aff;
    for (const auto& m : affine::enumerate_affine_group(field, c.d))
      aff.push_back(affine::to_perm(field, m, c.d));
    PointGroup comp = autgrp::compose_groups(aff, induced_perms(field, c.d),
                                             static_cast<std::uint32_t>(g.universe()));

    std::uint64_t product = affine::affine_group_order(field, c.d) * field.k();
    r.require(bf.size() == c.expected, field.name() + " d=" + std::to_string(c.d) + ": |Aut| = " +
                                           std::to_string(bf.size()) + ", expected " +
                                           std::to_string(c.expected));
    r.require(product == c.expected, "product formula disagrees for " + field.name());
    r.require(bf == comp, field.name() + " d=" + std::to_string(c.d) +
                              ": automorphisms differ from AffineTrf composed with induced maps");
    if (!sizes.empty()) sizes += ", ";
    sizes += std::to_string(bf.size());
  }
  r.note("group sizes " + sizes + " match the composed groups exactly");
  return r;
}

// ---- autlemma ----

CheckResult check_autlemma(const Options& opts) {
  CheckResult r;
  Gf field = make_gf(2, 2);
  geom::Geometry g = geom::build_geometry(
      {{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)}, {"Lam", lambda_symbol(2)}}, field, 2);
  defin::GroupsContext ctx = defin::compute_groups(g, 32, 10'000'000, opts.threads);
  PointGroup comp = autgrp::compose_groups(ctx.affaut.elems, ctx.induced,
                                           static_cast<std::uint32_t>(g.universe()));
  r.require(ctx.aut == comp, "Aut(G) is not AffAut(G) composed with the induced maps");

  auto induced = autgrp::induced_group(field, 2);
  std::size_t checked = 0;
  for (const Perm& alpha : ctx.aut.elems) {
    autgrp::Decomposition dec = autgrp::decompose(alpha, g);
    Perm rebuilt = autgrp::compose_perm(affine::to_perm(field, dec.affine_part, 2),
                                        induced[dec.field_part.exponent].second);
    r.require(rebuilt == alpha, "decomposition did not recompose to the automorphism");
    if (!r.pass) return r;
    ++checked;
  }
  r.note("all " + std::to_string(checked) + " automorphisms decompose uniquely (|AffAut| = " +
         std::to_string(ctx.affaut.size()) + ")");
  return r;
}

// ---- theorem1 ----

CheckResult check_theorem1(const Options& opts) {
  CheckResult r;
  int unary_checked = 0;
  int sampled_checked = 0;
  for (int p : {3, 5}) {
    Gf field = make_gf(p, 1);
    geom::Geometry g = affine_geometry(field, 2);
    defin::GroupsContext ctx = defin::compute_groups(g, 32, 10'000'000, opts.threads);
    if (p == 3) {
      for (std::uint32_t mask = 0; mask < 512; ++mask) {
        geom::ExtRelation rel = geom::make_ext_relation(field, 2, 1);
        for (int b = 0; b < 9; ++b)
          if (mask & (1u << b)) rel.bits.set(b);
        defin::DefinabilityReport rep = defin::theorem1_check(rel, g, ctx);
        r.require(rep.consistent && !rep.two_element_caveat,
                  "inconsistent verdicts on gf(3) unary relation " + std::to_string(mask));
        if (!r.pass) return r;
        ++unary_checked;
      }
    }
    for (const geom::ExtRelation& rel : defin::sample_relations(field, 2, 1000, opts.seed)) {
      defin::DefinabilityReport rep = defin::theorem1_check(rel, g, ctx);
      r.require(rep.consistent, "inconsistent verdicts on a sampled relation over " + field.name());
      if (!r.pass) return r;
      ++sampled_checked;
    }
  }
  r.note(std::to_string(unary_checked) + " unary + " + std::to_string(sampled_checked) +
         " sampled relations all consistent");
  return r;
}

// ---- lem-theta ----

CheckResult check_lem_theta(const Options& opts) {
  CheckResult r;
  Gf field = make_gf(3, 1);
  const int d = 2;
  std::vector<std::pair<std::string, fol::RelSymbol>> named = {
      {"Col", fol::make_rel_symbol(fol::gamma(d), 3, d)},
      {"Diag", diagonal_symbol(d)},
      {"Lam", lambda_symbol(d)},
  };
  geom::Geometry g_delta = geom::build_geometry(named, field, d);
  PointGroup affgrp = affaut_group(g_delta);

  std::vector<fol::RelSymbol> delta;
  std::vector<fol::CompiledGf> compiled;
  std::vector<geom::ExtRelation> exts;
  for (auto& [name, sym] : named) {
    delta.push_back(sym);
    compiled.emplace_back(fol::theta_r(sym, d));
    exts.push_back(geom::materialize(sym, field, d));
  }
  fol::CompiledGf compiled_delta(fol::theta_delta(delta, d));

  const std::uint64_t frames = 729;
  std::vector<std::uint8_t> ok(frames, 1);
  parallel_for(frames, opts.threads, [&](std::uint64_t frame) {
    fol::Env env = fol::make_env(compiled_delta.max_var());
    set_frame_env(env, frame, field.q(), d * (d + 1));
    geom::Point<Gf> e0 = {static_cast<Gf::Elem>(env[1]), static_cast<Gf::Elem>(env[2])};
    std::vector<geom::Point<Gf>> rest = {
        {static_cast<Gf::Elem>(env[3]), static_cast<Gf::Elem>(env[4])},
        {static_cast<Gf::Elem>(env[5]), static_cast<Gf::Elem>(env[6])}};
    bool independent = true;
    Perm frame_perm;
    try {
      affine::AffineMap<Gf> map = affine::frame_map(field, e0, rest);
      frame_perm = affine::to_perm(field, map, d);
    } catch (const Error&) {
      independent = false;
    }
    for (std::size_t i = 0; i < compiled.size(); ++i) {
      bool lhs = compiled[i].eval(field, env);
      bool rhs = independent && affine::respects(frame_perm, exts[i]).ok;
      if (lhs != rhs) ok[frame] = 0;
    }
    bool lhs_delta = compiled_delta.eval(field, env);
    bool rhs_delta = independent && affgrp.contains(frame_perm);
    if (lhs_delta != rhs_delta) ok[frame] = 0;
  });
  for (std::uint64_t f = 0; f < frames; ++f)
    r.require(ok[f] == 1, "frame " + std::to_string(f) + " disagrees");
  r.note("729 frames, 3 relation symbols and the joint conjunction all agree");
  return r;
}

// ---- affaut-lemma ----

CheckResult check_affaut_lemma(const Options&) {
  CheckResult r;
  Gf field = make_gf(5, 1);
  const int d = 2;
  fol::RelSymbol col = fol::make_rel_symbol(fol::gamma(d), 3, d);
  fol::RelSymbol lam = lambda_symbol(d);

  geom::Geometry g1 = geom::build_geometry({{"Col", col}}, field, d);
  geom::Geometry g2 = geom::build_geometry({{"Col", col}, {"Lam", lam}}, field, d);
  PointGroup grp1 = affaut_group(g1);
  PointGroup grp2 = affaut_group(g2);
  bool group_verdict = grp1.subset_of(grp2);

  std::vector<fol::RelSymbol> delta = {col};
  fol::CompiledGf compiled_delta(fol::theta_delta(delta, d));
  fol::CompiledGf compiled_lam(fol::theta_r(lam, d));
  bool formula_verdict = true;
  std::int64_t counterexample = -1;
  std::uint64_t frames = 1;
  for (int i = 0; i < d * (d + 1); ++i) frames *= field.q();
  fol::Env env = fol::make_env(std::max(compiled_delta.max_var(), compiled_lam.max_var()));
  for (std::uint64_t frame = 0; frame < frames; ++frame) {
    set_frame_env(env, frame, field.q(), d * (d + 1));
    // The implication fails exactly where the conclusion fails and the
    // premise holds; the conclusion is far cheaper, so test it first.
    if (compiled_lam.eval(field, env)) continue;
    if (compiled_delta.eval(field, env)) {
      formula_verdict = false;
      counterexample = static_cast<std::int64_t>(frame);
      break;
    }
  }
  r.require(formula_verdict == group_verdict, "formula-level and group-level verdicts disagree");
  r.require(!formula_verdict, "adding the lightlike relation must shrink the group");
  r.note("both routes refute the implication (frame " + std::to_string(counterexample) +
         "; groups " + std::to_string(grp1.size()) + " vs " + std::to_string(grp2.size()) + ")");
  return r;
}

// ---- translation ----

CheckResult check_translation(const Options&) {
  CheckResult r;
  std::istringstream corpus_in(tr_corpus_text());
  specio::StanzaFile corpus = specio::parse_stanza_file(corpus_in);
  r.require(corpus.stanzas.size() == 20,
            "corpus must hold 20 formulas, got " + std::to_string(corpus.stanzas.size()));

  translate::SymbolBinding binding;
  binding.d = 2;
  binding.sigma.emplace("Col", fol::make_rel_symbol(fol::gamma(2), 3, 2));

  for (int p : {3, 5}) {
    Gf field = make_gf(p, 1);
    geom::Geometry g = affine_geometry(field, 2);
    for (const specio::Stanza& st : corpus.stanzas) {
      translate::TrVerification v = translate::verify_tr(fol::parse(st.formula_text), binding, g);
      r.require(v.ok && v.exhaustive, "'" + st.name + "' fails over " + field.name());
      if (!r.pass) return r;
    }
  }

  // A corrupted binding must be caught with a concrete assignment.
  translate::SymbolBinding corrupted;
  corrupted.d = 2;
  corrupted.sigma.emplace("Col", fol::make_rel_symbol(fol::f_not(fol::gamma(2)), 3, 2));
  Gf f3 = make_gf(3, 1);
  geom::Geometry g3 = affine_geometry(f3, 2);
  translate::TrVerification bad =
      translate::verify_tr(fol::parse("Col(v1, v1, v1)"), corrupted, g3);
  r.require(!bad.ok && !bad.counterexample.empty(),
            "negated binding was not refuted by a concrete assignment");
  r.note("20 formulas hold exhaustively over gf(3) and gf(5); negated binding refuted");
  return r;
}

// ---- gamma-col ----

CheckResult check_gamma_col(const Options&) {
  CheckResult r;
  std::uint64_t triples = 0;
  for (int d : {2, 3}) {
    for (auto [p, k] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
      Gf field = make_gf(p, k);
      geom::ExtRelation ext =
          geom::materialize(fol::make_rel_symbol(fol::gamma(d), 3, d), field, d);
      std::uint32_t u = static_cast<std::uint32_t>(geom::point_count(field, d));
      std::vector<geom::Point<Gf>> pts(u);
      for (std::uint32_t i = 0; i < u; ++i) pts[i] = geom::index_point(field, d, i);
      for (std::uint32_t a = 0; a < u; ++a)
        for (std::uint32_t b = 0; b < u; ++b)
          for (std::uint32_t c = 0; c < u; ++c) {
            std::uint32_t tup[3] = {a, b, c};
            if (geom::semantic_col(field, pts[a], pts[b], pts[c]) != ext.test_points(tup)) {
              r.require(false, "mismatch over " + field.name() + " d=" + std::to_string(d));
              return r;
            }
            ++triples;
          }
    }
  }
  r.note(std::to_string(triples) + " triples agree across q in {2,3,4,5}, d in {2,3}");
  return r;
}

// ---- erlangen ----

CheckResult check_erlangen(const Options& opts) {
  CheckResult r;
  Gf field = make_gf(5, 1);
  geom::Geometry g1 = affine_geometry(field, 2);
  geom::Geometry g2 = geom::build_geometry(
      {{"Col", fol::make_rel_symbol(fol::gamma(2), 3, 2)}, {"Lam", lambda_symbol(2)}}, field, 2);

  defin::ComparisonVerdict v = defin::compare_concepts(g1, g2, 32, 10'000'000, opts.threads);
  r.require(v.order == defin::CnOrder::LeftProperSubset,
            std::string("expected left-proper-subset, got ") + defin::cn_order_name(v.order));
  r.require(v.order_via_aut == v.order, "automorphism route disagrees");
  r.require(v.missing_left.has_value() && v.missing_left->relation_name == "Lam",
            "witness must be the lightlike relation");
  if (v.missing_left) {
    // Re-check the witness independently: the tuple is in the relation,
    // its image is not.
    const geom::NamedRelation* lam = g2.find("Lam");
    const defin::ClosureWitness& w = v.missing_left->violation;
    std::vector<std::uint32_t> img(w.tuple.size());
    for (std::size_t i = 0; i < w.tuple.size(); ++i) img[i] = w.map[w.tuple[i]];
    r.require(lam->ext.test_points(w.tuple) && !lam->ext.test_points(img),
              "witness tuple does not violate closure");
  }

  defin::HasseResult h = defin::hasse({{"affine", g1}, {"affine_lambda", g2}});
  r.require(h.classes.size() == 2 && h.edges.size() == 1, "expected two nodes and one edge");
  std::string dot = specio::emit_dot(h);
  r.require(dot == hasse_golden_dot(), "DOT output is not byte-identical to the golden file");
  r.note("Cn strictly grows when the lightlike relation joins; witness Lam; DOT matches golden");
  return r;
}

// ---- qgeom ----

CheckResult check_qgeom(const Options& opts) {
  CheckResult r;
  const Rationals field;
  const int d = 2;
  std::mt19937_64 rng(opts.seed);

  // Criterion vs sampler on random maps, plus a few maps that genuinely
  // respect each relation.
  std::vector<qgeom::QAffine> maps;
  for (int i = 0; i < 100; ++i) maps.push_back(qgeom::random_affine(rng, field, d));
  {
    qgeom::QMat rot;
    rot.d = 2;
    rot.a = {rat(3, 5), rat(-4, 5), rat(4, 5), rat(3, 5)};
    maps.push_back(affine::make_affine(field, rot, {Rat(1), Rat(-2)}));
    qgeom::QMat boost;
    boost.d = 2;
    boost.a = {rat(5, 4), rat(3, 4), rat(3, 4), rat(5, 4)};
    maps.push_back(affine::make_affine(field, boost, {Rat(0), Rat(3)}));
    qgeom::QMat swap;
    swap.d = 2;
    swap.a = {Rat(0), Rat(1), Rat(1), Rat(0)};
    maps.push_back(affine::make_affine(field, swap, {Rat(0), Rat(0)}));
  }
  int cong_pass = 0, light_pass = 0;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    bool cong = qgeom::respects_cong(field, maps[i]);
    auto cw = qgeom::sampled_cong_witness(field, maps[i], opts.seed + i);
    r.require(cong == !cw.has_value(),
              "congruence criterion and sampler disagree on map " + std::to_string(i));
    bool light = qgeom::respects_lightlike(field, maps[i]);
    auto lw = qgeom::sampled_lightlike_witness(field, maps[i], opts.seed + i);
    r.require(light == !lw.has_value(),
              "lightlike criterion and sampler disagree on map " + std::to_string(i));
    if (!r.pass) return r;
    cong_pass += cong;
    light_pass += light;
  }

  // Betweenness under 1000 random maps on 1000 triples each.
  std::vector<qgeom::QAffine> bw_maps;
  for (int i = 0; i < 1000; ++i) bw_maps.push_back(qgeom::random_affine(rng, field, d));
  std::vector<std::array<qgeom::QVec, 3>> triples;
  for (int i = 0; i < 1000; ++i) {
    qgeom::QVec p = qgeom::random_point(rng, d);
    qgeom::QVec q = qgeom::random_point(rng, d);
    qgeom::QVec rr = qgeom::random_point(rng, d);
    if (i % 2 == 0) {
      // Put q on the segment so the positive case is well represented.
      Rat t = Rat(static_cast<long long>(rng() % 5)) / Rat(4);
      for (int c = 0; c < d; ++c) q[c] = p[c] + t * (rr[c] - p[c]);
    }
    triples.push_back({p, q, rr});
  }
  std::atomic<std::uint64_t> bw_mismatch{0};
  parallel_for(bw_maps.size(), opts.threads, [&](std::uint64_t i) {
    const qgeom::QAffine& m = bw_maps[i];
    for (const auto& t : triples) {
      bool before = geom::semantic_bw(field, t[0], t[1], t[2]);
      bool after =
          geom::semantic_bw(field, affine::apply(field, m, t[0]), affine::apply(field, m, t[1]),
                            affine::apply(field, m, t[2]));
      if (before != after) bw_mismatch.fetch_add(1);
    }
    if (!qgeom::respects_bw(field, m)) bw_mismatch.fetch_add(1);
  });
  r.require(bw_mismatch.load() == 0, "an affine map failed to respect betweenness");

  // Collinearity from the betweenness disjunction.
  int col_checked = 0;
  for (int i = 0; i < 10'000; ++i) {
    qgeom::QVec p = qgeom::random_point(rng, d);
    qgeom::QVec q = qgeom::random_point(rng, d);
    qgeom::QVec rr = qgeom::random_point(rng, d);
    if (i % 2 == 0) {
      Rat t = Rat(static_cast<long long>(rng() % 9) - 4) / Rat(2);
      for (int c = 0; c < d; ++c) q[c] = p[c] + t * (rr[c] - p[c]);
    }
    bool direct = geom::semantic_col(field, p, q, rr);
    bool via_bw = geom::semantic_bw(field, p, q, rr) || geom::semantic_bw(field, q, p, rr) ||
                  geom::semantic_bw(field, p, rr, q);
    r.require(direct == via_bw, "collinearity disagrees with the betweenness disjunction");
    if (!r.pass) return r;
    ++col_checked;
  }
  r.note("criterion/sampler agree on " + std::to_string(maps.size()) + " maps (" +
         std::to_string(cong_pass) + "/" + std::to_string(light_pass) +
         " respecting); betweenness preserved; " + std::to_string(col_checked) +
         " collinearity triples agree");
  return r;
}

struct CheckSpec {
  const char* name;
  double budget_seconds;
  CheckResult (*fn)(const Options&);
};

const CheckSpec kChecks[] = {
    {"gf2-counterexample", 1.0, check_gf2},
    {"fundamental-thm", 300.0, check_fundamental},
    {"autlemma", 60.0, check_autlemma},
    {"theorem1", 600.0, check_theorem1},
    {"lem-theta", 300.0, check_lem_theta},
    {"affaut-lemma", 300.0, check_affaut_lemma},
    {"translation", 120.0, check_translation},
    {"gamma-col", 180.0, check_gamma_col},
    {"erlangen", 120.0, check_erlangen},
    {"qgeom", 60.0, check_qgeom},
};

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const CheckSpec& c : kChecks) out.push_back(c.name);
    return out;
  }();
  return names;
}

std::vector<Outcome> run_checks(const Options& opts) {
  std::vector<Outcome> out;
  for (const CheckSpec& spec : kChecks) {
    if (!opts.only.empty()) {
      bool wanted = false;
      for (const std::string& o : opts.only)
        if (o == spec.name) wanted = true;
      if (!wanted) continue;
    }
    Outcome o;
    o.name = spec.name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      CheckResult r = spec.fn(opts);
      o.pass = r.pass;
      o.detail = r.detail;
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    o.seconds = std::chrono::duration<double>(t1 - t0).count();
    if (o.pass && o.seconds > spec.budget_seconds) {
      o.pass = false;
      o.detail = "exceeded the runtime budget of " + std::to_string(spec.budget_seconds) + "s";
    }
    out.push_back(std::move(o));
  }
  return out;
}

const std::string& tr_corpus_text() {
  static const std::string corpus =
      "# Geometry-language formulas for the translation checks; Col is the\n"
      "# ternary collinearity symbol.\n"
      "col_refl := Col(v1, v1, v1)\n"
      "col_r_eq_p := Col(v1, v2, v1)\n"
      "col_left_deg := Col(v1, v1, v2)\n"
      "col_right_deg := Col(v1, v2, v2)\n"
      "col_swap := Col(v1, v2, v3) -> Col(v3, v2, v1)\n"
      "col_perm := Col(v1, v2, v3) -> Col(v2, v1, v3)\n"
      "eq_simple := v1 = v2\n"
      "eq_refl := v1 = v1\n"
      "eq_excluded_middle := v1 = v2 | !(v1 = v2)\n"
      "eq_and_col := v1 = v2 & Col(v1, v2, v3)\n"
      "exists_third := exists v3 Col(v1, v2, v3)\n"
      "exists_self := exists v2 v1 = v2\n"
      "sentence_refl := forall v1 Col(v1, v1, v1)\n"
      "sentence_two_points := exists v1 exists v2 !(v1 = v2)\n"
      "sentence_extend := forall v1 exists v2 Col(v1, v2, v2)\n"
      "line_transitive := Col(v1, v2, v3) & Col(v1, v3, v4) -> Col(v1, v2, v4)\n"
      "not_col := !Col(v1, v2, v3)\n"
      "iff_degenerate := Col(v1, v2, v1) <-> v2 = v2\n"
      "implies_chain := v1 = v2 -> (v2 = v3 -> Col(v1, v2, v3))\n"
      "exists_distinct := exists v2 (Col(v1, v2, v3) & !(v2 = v1))\n";
  return corpus;
}

const std::string& hasse_golden_dot() {
  static const std::string golden =
      "digraph concepts {\n"
      "  \"affine\";\n"
      "  \"affine_lambda\";\n"
      "  \"affine\" -> \"affine_lambda\";\n"
      "}\n";
  return golden;
}

std::vector<std::string> deviation_notes() {
  return {
      "congruence sums squared coordinate differences in every position; the defining identity "
      "is read with exponent 2 on the last coordinate as well",
      "the ordered-field spacetime concept diagram is replaced at this scale by its finite-field "
      "two-node analogue (collinearity vs collinearity plus lightlikeness over gf(5))",
  };
}

}  // namespace geodef::verify
