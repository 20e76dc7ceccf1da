#include "geodef/translate.hpp"

#include <algorithm>
#include <random>

namespace geodef::translate {

namespace {

using fol::Formula;
using fol::FormulaKind;
using fol::Term;
using fol::TermKind;

int geometry_var(const Term& t) {
  if (t.kind != TermKind::Var)
    fail(Err::InvalidArgument, "geometry formulas may only mention plain variables");
  return t.var;
}

// Field variables owned by geometry variable i: v_{1+(i-1)d}..v_{id}.
int block_start(int i, int d) { return 1 + (i - 1) * d; }

Formula tr_impl(const Formula& f, const SymbolBinding& b) {
  int d = b.d;
  switch (f.kind) {
    case FormulaKind::Eq: {
      int i = geometry_var(f.terms[0]);
      int j = geometry_var(f.terms[1]);
      std::vector<Formula> eqs;
      for (int c = 0; c < d; ++c)
        eqs.push_back(fol::f_eq(fol::t_var(block_start(i, d) + c),
                                fol::t_var(block_start(j, d) + c)));
      return fol::conjoin(std::move(eqs));
    }
    case FormulaKind::Le:
      fail(Err::OrderUnsupported, "geometry formulas carry no order symbol");
    case FormulaKind::RelApp: {
      auto it = b.sigma.find(f.rel);
      if (it == b.sigma.end())
        fail(Err::UnboundSymbol, "no binding for relation symbol '" + f.rel + "'");
      const fol::RelSymbol& sym = it->second;
      if (static_cast<int>(f.terms.size()) != sym.arity)
        fail(Err::InvalidArgument, "arity mismatch for '" + f.rel + "'");
      // sigma's variable v_{(t-1)d+c} moves to the block of the t-th
      // argument; bound variables of sigma are renamed above everything
      // in use by the capture-avoiding substitution.
      std::map<int, Term> sub;
      for (int t = 0; t < sym.arity; ++t) {
        int from = block_start(t + 1, d);
        int to = block_start(geometry_var(f.terms[t]), d);
        for (int c = 0; c < d; ++c)
          if (from + c != to + c) sub[from + c] = fol::t_var(to + c);
      }
      return fol::substitute(sym.rho, sub);
    }
    case FormulaKind::Not: return fol::f_not(tr_impl(f.kids[0], b));
    case FormulaKind::And: return fol::f_and(tr_impl(f.kids[0], b), tr_impl(f.kids[1], b));
    case FormulaKind::Or:
      // phi | psi == !(!phi & !psi)
      return fol::f_not(fol::f_and(fol::f_not(tr_impl(f.kids[0], b)),
                                   fol::f_not(tr_impl(f.kids[1], b))));
    case FormulaKind::Implies:
      // phi -> psi == !(phi & !psi)
      return fol::f_not(fol::f_and(tr_impl(f.kids[0], b), fol::f_not(tr_impl(f.kids[1], b))));
    case FormulaKind::Iff: {
      Formula a = tr_impl(f.kids[0], b);
      Formula c = tr_impl(f.kids[1], b);
      Formula left = fol::f_not(fol::f_and(a, fol::f_not(c)));
      Formula right = fol::f_not(fol::f_and(std::move(c), fol::f_not(std::move(a))));
      return fol::f_and(std::move(left), std::move(right));
    }
    case FormulaKind::Exists: {
      Formula body = tr_impl(f.kids[0], b);
      for (int c = d - 1; c >= 0; --c)
        body = fol::f_exists(block_start(f.var, d) + c, std::move(body));
      return body;
    }
    case FormulaKind::Forall: {
      // forall x phi == !exists x !phi
      Formula body = fol::f_not(tr_impl(f.kids[0], b));
      for (int c = d - 1; c >= 0; --c)
        body = fol::f_exists(block_start(f.var, d) + c, std::move(body));
      return fol::f_not(std::move(body));
    }
  }
  fail(Err::InvalidArgument, "corrupt formula");
}

}  // namespace

fol::Formula tr(const fol::Formula& geometry_formula, const SymbolBinding& binding) {
  if (binding.d < 2) fail(Err::DimensionTooSmall, "dimension must be >= 2");
  return tr_impl(geometry_formula, binding);
}

TrVerification verify_tr(const fol::Formula& geometry_formula, const SymbolBinding& binding,
                         const geom::Geometry& g, const TrOptions& opts) {
  TrVerification out;
  fol::Formula field_formula = tr(geometry_formula, binding);
  std::set<int> fv = fol::free_vars(geometry_formula);
  out.free_geometry_vars.assign(fv.begin(), fv.end());
  int m = static_cast<int>(out.free_geometry_vars.size());
  std::uint64_t universe = g.universe();
  int d = g.d;

  std::uint64_t space = 1;
  bool overflow = false;
  for (int i = 0; i < m; ++i) {
    if (space > opts.exhaustive_bound / universe + 1) overflow = true;
    space *= universe;
  }
  bool exhaustive = !overflow && space <= opts.exhaustive_bound;
  out.exhaustive = exhaustive;
  std::uint64_t total = exhaustive ? space : opts.sample_budget;

  int max_geom_var = m == 0 ? 0 : out.free_geometry_vars.back();
  fol::Env genv = fol::make_env(std::max(max_geom_var, fol::max_var_index(geometry_formula)));
  fol::Env fenv = fol::make_env(std::max(d * std::max(max_geom_var, 1),
                                         fol::max_var_index(field_formula)));
  std::mt19937_64 rng(opts.seed);

  std::vector<std::uint32_t> points(m, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    if (exhaustive) {
      std::uint64_t rest = step;
      for (int i = 0; i < m; ++i) {
        points[i] = static_cast<std::uint32_t>(rest % universe);
        rest /= universe;
      }
    } else {
      for (int i = 0; i < m; ++i)
        points[i] = static_cast<std::uint32_t>(rng() % universe);
    }
    for (int i = 0; i < m; ++i) {
      int gv = out.free_geometry_vars[i];
      genv[gv] = static_cast<std::int32_t>(points[i]);
      geom::Point<Gf> coords = geom::index_point(g.field, d, points[i]);
      for (int c = 0; c < d; ++c)
        fenv[1 + (gv - 1) * d + c] = static_cast<std::int32_t>(coords[c]);
    }
    bool lhs = geom::eval_geom(geometry_formula, g, genv);
    bool rhs = fol::eval_unchecked(field_formula, g.field, fenv);
    ++out.assignments_checked;
    if (lhs != rhs) {
      out.ok = false;
      out.counterexample = points;
      return out;
    }
  }
  return out;
}

}  // namespace geodef::translate
