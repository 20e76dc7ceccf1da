#include "geodef/fol.hpp"

#include <algorithm>

namespace geodef::fol {

Term t_var(int i) {
  if (i < 1) fail(Err::InvalidArgument, "variable indices start at 1");
  Term t;
  t.kind = TermKind::Var;
  t.var = i;
  return t;
}

Term t_zero() { return Term{TermKind::Zero, 0, {}}; }
Term t_one() { return Term{TermKind::One, 0, {}}; }

static Term t_bin(TermKind k, Term a, Term b) {
  Term t;
  t.kind = k;
  t.kids.reserve(2);
  t.kids.push_back(std::move(a));
  t.kids.push_back(std::move(b));
  return t;
}

Term t_add(Term a, Term b) { return t_bin(TermKind::Add, std::move(a), std::move(b)); }
Term t_mul(Term a, Term b) { return t_bin(TermKind::Mul, std::move(a), std::move(b)); }
Term t_sub(Term a, Term b) { return t_bin(TermKind::Sub, std::move(a), std::move(b)); }

Term t_const(int n) {
  if (n < 0) fail(Err::InvalidArgument, "t_const expects n >= 0");
  if (n == 0) return t_zero();
  Term t = t_one();
  for (int i = 1; i < n; ++i) t = t_add(std::move(t), t_one());
  return t;
}

Formula f_eq(Term a, Term b) {
  Formula f;
  f.kind = FormulaKind::Eq;
  f.terms.reserve(2);
  f.terms.push_back(std::move(a));
  f.terms.push_back(std::move(b));
  return f;
}

Formula f_le(Term a, Term b) {
  Formula f;
  f.kind = FormulaKind::Le;
  f.terms.reserve(2);
  f.terms.push_back(std::move(a));
  f.terms.push_back(std::move(b));
  return f;
}

Formula f_rel(std::string name, std::vector<Term> args) {
  Formula f;
  f.kind = FormulaKind::RelApp;
  f.rel = std::move(name);
  f.terms = std::move(args);
  return f;
}

Formula f_not(Formula a) {
  Formula f;
  f.kind = FormulaKind::Not;
  f.kids.push_back(std::move(a));
  return f;
}

static Formula f_bin(FormulaKind k, Formula a, Formula b) {
  Formula f;
  f.kind = k;
  f.kids.reserve(2);
  f.kids.push_back(std::move(a));
  f.kids.push_back(std::move(b));
  return f;
}

Formula f_and(Formula a, Formula b) { return f_bin(FormulaKind::And, std::move(a), std::move(b)); }
Formula f_or(Formula a, Formula b) { return f_bin(FormulaKind::Or, std::move(a), std::move(b)); }
Formula f_implies(Formula a, Formula b) {
  return f_bin(FormulaKind::Implies, std::move(a), std::move(b));
}
Formula f_iff(Formula a, Formula b) { return f_bin(FormulaKind::Iff, std::move(a), std::move(b)); }

static Formula f_quant(FormulaKind k, int var, Formula body) {
  if (var < 1) fail(Err::InvalidArgument, "variable indices start at 1");
  Formula f;
  f.kind = k;
  f.var = var;
  f.kids.push_back(std::move(body));
  return f;
}

Formula f_exists(int var, Formula body) {
  return f_quant(FormulaKind::Exists, var, std::move(body));
}
Formula f_forall(int var, Formula body) {
  return f_quant(FormulaKind::Forall, var, std::move(body));
}

Formula conjoin(std::vector<Formula> fs) {
  if (fs.empty()) fail(Err::InvalidArgument, "conjoin of empty list");
  Formula acc = std::move(fs.front());
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_and(std::move(acc), std::move(fs[i]));
  return acc;
}

std::set<int> term_vars(const Term& t) {
  std::set<int> out;
  auto walk = [&](auto&& self, const Term& u) -> void {
    if (u.kind == TermKind::Var) out.insert(u.var);
    for (const Term& k : u.kids) self(self, k);
  };
  walk(walk, t);
  return out;
}

static void free_vars_into(const Formula& f, std::set<int>& bound, std::set<int>& out) {
  switch (f.kind) {
    case FormulaKind::Eq:
    case FormulaKind::Le:
    case FormulaKind::RelApp:
      for (const Term& t : f.terms)
        for (int v : term_vars(t))
          if (!bound.count(v)) out.insert(v);
      return;
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool was_bound = bound.count(f.var) > 0;
      bound.insert(f.var);
      free_vars_into(f.kids[0], bound, out);
      if (!was_bound) bound.erase(f.var);
      return;
    }
    default:
      for (const Formula& k : f.kids) free_vars_into(k, bound, out);
      return;
  }
}

std::set<int> free_vars(const Formula& f) {
  std::set<int> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

static int term_max_var(const Term& t) {
  int m = t.kind == TermKind::Var ? t.var : 0;
  for (const Term& k : t.kids) m = std::max(m, term_max_var(k));
  return m;
}

int max_var_index(const Formula& f) {
  int m = f.var;
  for (const Term& t : f.terms) m = std::max(m, term_max_var(t));
  for (const Formula& k : f.kids) m = std::max(m, max_var_index(k));
  return m;
}

static Term term_substitute(const Term& t, const std::map<int, Term>& subst) {
  if (t.kind == TermKind::Var) {
    auto it = subst.find(t.var);
    return it == subst.end() ? t : it->second;
  }
  Term out;
  out.kind = t.kind;
  out.var = t.var;
  out.kids.reserve(t.kids.size());
  for (const Term& k : t.kids) out.kids.push_back(term_substitute(k, subst));
  return out;
}

static Formula substitute_impl(const Formula& f, std::map<int, Term> subst, int& fresh) {
  switch (f.kind) {
    case FormulaKind::Eq:
    case FormulaKind::Le:
    case FormulaKind::RelApp: {
      Formula out;
      out.kind = f.kind;
      out.rel = f.rel;
      out.terms.reserve(f.terms.size());
      for (const Term& t : f.terms) out.terms.push_back(term_substitute(t, subst));
      return out;
    }
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      std::map<int, Term> inner = subst;
      inner.erase(f.var);
      bool capture = false;
      for (const auto& [from, to] : inner) {
        (void)from;
        if (term_vars(to).count(f.var)) {
          capture = true;
          break;
        }
      }
      int bound_var = f.var;
      Formula body = f.kids[0];
      if (capture) {
        bound_var = fresh++;
        std::map<int, Term> rename{{f.var, t_var(bound_var)}};
        int dummy = fresh;
        body = substitute_impl(body, rename, dummy);
        fresh = std::max(fresh, dummy);
      }
      Formula out;
      out.kind = f.kind;
      out.var = bound_var;
      out.kids.push_back(inner.empty() ? body : substitute_impl(body, std::move(inner), fresh));
      return out;
    }
    default: {
      Formula out;
      out.kind = f.kind;
      out.kids.reserve(f.kids.size());
      for (const Formula& k : f.kids) out.kids.push_back(substitute_impl(k, subst, fresh));
      return out;
    }
  }
}

Formula substitute(const Formula& f, const std::map<int, Term>& subst) {
  int fresh = max_var_index(f);
  for (const auto& [from, to] : subst) {
    fresh = std::max(fresh, from);
    fresh = std::max(fresh, term_max_var(to));
  }
  ++fresh;
  return substitute_impl(f, subst, fresh);
}

Formula tarski_apply(const Formula& rho, std::span<const int> slot_vars,
                     std::span<const int> target_vars) {
  if (slot_vars.size() != target_vars.size())
    fail(Err::InvalidArgument, "tarski_apply: slot/target length mismatch");
  std::set<int> bound_so_far;
  for (std::size_t i = 0; i < slot_vars.size(); ++i) {
    if (i > 0 && slot_vars[i] <= slot_vars[i - 1])
      fail(Err::InvalidArgument, "tarski_apply: slots must be strictly ascending");
    if (slot_vars[i] == target_vars[i]) continue;
    if (bound_so_far.count(target_vars[i]))
      fail(Err::InvalidArgument, "tarski_apply: target captured by an earlier binder");
    bound_so_far.insert(slot_vars[i]);
  }
  Formula acc = rho;
  for (std::size_t j = slot_vars.size(); j-- > 0;) {
    if (slot_vars[j] == target_vars[j]) continue;
    acc = f_exists(slot_vars[j],
                   f_and(f_eq(t_var(slot_vars[j]), t_var(target_vars[j])), std::move(acc)));
  }
  return acc;
}

namespace {

// Bijective correspondence between bound variables of two formulas.
struct AlphaScope {
  std::vector<std::pair<int, int>> stack;

  int lookup_a(int v) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->first == v) return it->second;
    return 0;
  }
  int lookup_b(int v) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->second == v) return it->first;
    return 0;
  }
};

bool alpha_term(const Term& a, const Term& b, const AlphaScope& sc) {
  if (a.kind != b.kind) return false;
  if (a.kind == TermKind::Var) {
    int ma = sc.lookup_a(a.var);
    int mb = sc.lookup_b(b.var);
    if (ma == 0 && mb == 0) return a.var == b.var;  // both free
    return ma == b.var && mb == a.var;
  }
  if (a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!alpha_term(a.kids[i], b.kids[i], sc)) return false;
  return true;
}

bool alpha_impl(const Formula& a, const Formula& b, AlphaScope& sc) {
  if (a.kind != b.kind) return false;
  if (a.rel != b.rel) return false;
  if (a.terms.size() != b.terms.size() || a.kids.size() != b.kids.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i)
    if (!alpha_term(a.terms[i], b.terms[i], sc)) return false;
  if (a.kind == FormulaKind::Exists || a.kind == FormulaKind::Forall) {
    sc.stack.emplace_back(a.var, b.var);
    bool ok = alpha_impl(a.kids[0], b.kids[0], sc);
    sc.stack.pop_back();
    return ok;
  }
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!alpha_impl(a.kids[i], b.kids[i], sc)) return false;
  return true;
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) {
  AlphaScope sc;
  return alpha_impl(a, b, sc);
}

RelSymbol make_rel_symbol(Formula rho, int arity, int d) {
  if (arity < 1) fail(Err::InvalidArgument, "relation arity must be >= 1");
  if (d < 2) fail(Err::DimensionTooSmall, "dimension must be >= 2");
  for (int v : free_vars(rho))
    if (v > d * arity)
      fail(Err::InvalidArgument,
           "free variable v" + std::to_string(v) + " outside v1..v" + std::to_string(d * arity));
  return RelSymbol{std::move(rho), arity};
}

// ---- Named formulas ----

static void require_dim(int d) {
  if (d < 2) fail(Err::DimensionTooSmall, "dimension must be >= 2");
}

Formula gamma(int d) {
  require_dim(d);
  int v = 3 * d + 1;
  std::vector<Formula> eqs;
  std::vector<Formula> zx;
  for (int j = 1; j <= d; ++j) {
    Term xj = t_var(j);
    Term yj = t_var(d + j);
    Term zj = t_var(2 * d + j);
    eqs.push_back(f_eq(t_add(yj, t_mul(t_var(v), t_var(j))),
                       t_add(t_var(j), t_mul(t_var(v), zj))));
    zx.push_back(f_eq(zj, xj));
  }
  return f_exists(v, f_or(conjoin(std::move(eqs)), conjoin(std::move(zx))));
}

Formula beta(int d) {
  require_dim(d);
  int v = 3 * d + 1;
  std::vector<Formula> eqs;
  for (int j = 1; j <= d; ++j) {
    Term zj = t_var(2 * d + j);
    eqs.push_back(f_eq(t_add(t_var(d + j), t_mul(t_var(v), t_var(j))),
                       t_add(t_var(j), t_mul(t_var(v), zj))));
  }
  Formula range = f_and(f_le(t_zero(), t_var(v)), f_le(t_var(v), t_one()));
  return f_exists(v, f_and(conjoin(std::move(eqs)), std::move(range)));
}

// Frame layout shared by iota/theta: point i of the frame occupies
// variables v_{i*d+1}..v_{(i+1)*d}, for i = 0..d.
static int frame_var(int d, int point, int coord) { return point * d + coord; }

Formula iota(int d) {
  require_dim(d);
  int m = d * (d + 1);
  auto lam = [&](int i) { return m + i; };  // bound multiplier block
  std::vector<Formula> comps;
  for (int j = 1; j <= d; ++j) {
    Term sum = t_mul(t_var(lam(1)), t_sub(t_var(frame_var(d, 1, j)), t_var(frame_var(d, 0, j))));
    for (int i = 2; i <= d; ++i)
      sum = t_add(std::move(sum), t_mul(t_var(lam(i)), t_sub(t_var(frame_var(d, i, j)),
                                                             t_var(frame_var(d, 0, j)))));
    comps.push_back(f_eq(std::move(sum), t_zero()));
  }
  std::vector<Formula> zeros;
  for (int i = 1; i <= d; ++i) zeros.push_back(f_eq(t_var(lam(i)), t_zero()));
  Formula body = f_implies(conjoin(std::move(comps)), conjoin(std::move(zeros)));
  for (int i = d; i >= 1; --i) body = f_forall(lam(i), std::move(body));
  return body;
}

Formula theta(int d) {
  require_dim(d);
  int m = d * (d + 1);
  auto xv = [&](int j) { return m + j; };
  auto yv = [&](int j) { return m + d + j; };
  std::vector<Formula> comps;
  for (int j = 1; j <= d; ++j) {
    Term rhs = t_var(frame_var(d, 0, j));
    for (int i = 1; i <= d; ++i)
      rhs = t_add(std::move(rhs), t_mul(t_var(xv(i)), t_sub(t_var(frame_var(d, i, j)),
                                                            t_var(frame_var(d, 0, j)))));
    comps.push_back(f_eq(t_var(yv(j)), std::move(rhs)));
  }
  return conjoin(std::move(comps));
}

// Applies a formula whose free variables are v1..v_{dn} (n consecutive
// point blocks) to point blocks starting at the given first variables.
static Formula apply_blocks(const Formula& rho, int d, std::span<const int> block_starts,
                            SubstMode mode) {
  std::vector<int> slots, targets;
  for (std::size_t i = 0; i < block_starts.size(); ++i)
    for (int c = 0; c < d; ++c) {
      slots.push_back(static_cast<int>(i) * d + c + 1);
      targets.push_back(block_starts[i] + c);
    }
  if (mode == SubstMode::TarskiFootnote) return tarski_apply(rho, slots, targets);
  std::map<int, Term> sub;
  for (std::size_t i = 0; i < slots.size(); ++i)
    if (slots[i] != targets[i]) sub[slots[i]] = t_var(targets[i]);
  return substitute(rho, sub);
}

Formula theta_r(const RelSymbol& r, int d, SubstMode mode) {
  require_dim(d);
  int n = r.arity;
  int m = d * (d + 1);
  int base = std::max(m, d * n);
  auto xblock = [&](int i) { return base + (i - 1) * d + 1; };          // i = 1..n
  auto yblock = [&](int i) { return base + n * d + (i - 1) * d + 1; };  // i = 1..n

  // theta's own x/y slots are m+1..m+d and m+d+1..m+2d.
  Formula th = theta(d);
  std::vector<Formula> premise;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> slots, targets;
    for (int c = 0; c < d; ++c) {
      slots.push_back(m + 1 + c);
      targets.push_back(xblock(i) + c);
    }
    for (int c = 0; c < d; ++c) {
      slots.push_back(m + d + 1 + c);
      targets.push_back(yblock(i) + c);
    }
    if (mode == SubstMode::TarskiFootnote) {
      premise.push_back(tarski_apply(th, slots, targets));
    } else {
      std::map<int, Term> sub;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (slots[s] != targets[s]) sub[slots[s]] = t_var(targets[s]);
      premise.push_back(substitute(th, sub));
    }
  }

  std::vector<int> xstarts, ystarts;
  for (int i = 1; i <= n; ++i) xstarts.push_back(xblock(i));
  for (int i = 1; i <= n; ++i) ystarts.push_back(yblock(i));
  Formula rho_x = apply_blocks(r.rho, d, xstarts, mode);
  Formula rho_y = apply_blocks(r.rho, d, ystarts, mode);

  Formula body = f_implies(conjoin(std::move(premise)),
                           f_iff(std::move(rho_x), std::move(rho_y)));
  for (int v = base + 2 * n * d; v > base; --v) body = f_forall(v, std::move(body));
  return f_and(iota(d), std::move(body));
}

Formula theta_delta(std::span<const RelSymbol> delta, int d, SubstMode mode) {
  if (delta.empty()) fail(Err::EmptyDelta, "theta_delta of empty relation set");
  std::vector<Formula> parts;
  parts.reserve(delta.size());
  for (const RelSymbol& r : delta) parts.push_back(theta_r(r, d, mode));
  return conjoin(std::move(parts));
}

// ---- Evaluation over GF(q) ----

namespace {

struct GfEval {
  const Gf& field;
  Env& env;

  int term(const Term& t) const {
    switch (t.kind) {
      case TermKind::Var: {
        std::int32_t v = env[t.var];
        if (v < 0)
          fail(Err::UnboundVariable, "v" + std::to_string(t.var) + " unbound in evaluation");
        return v;
      }
      case TermKind::Zero: return 0;
      case TermKind::One: return 1;
      case TermKind::Add:
        return field.add(static_cast<Gf::Elem>(term(t.kids[0])),
                         static_cast<Gf::Elem>(term(t.kids[1])));
      case TermKind::Mul:
        return field.mul(static_cast<Gf::Elem>(term(t.kids[0])),
                         static_cast<Gf::Elem>(term(t.kids[1])));
      case TermKind::Sub:
        return field.sub(static_cast<Gf::Elem>(term(t.kids[0])),
                         static_cast<Gf::Elem>(term(t.kids[1])));
    }
    fail(Err::InvalidArgument, "corrupt term");
  }

  bool formula(const Formula& f) const {
    switch (f.kind) {
      case FormulaKind::Eq: return term(f.terms[0]) == term(f.terms[1]);
      case FormulaKind::Le:
        fail(Err::OrderUnsupported, "no order on " + field.name());
      case FormulaKind::RelApp:
        fail(Err::UnknownSymbol, "relation symbol '" + f.rel + "' in a field formula");
      case FormulaKind::Not: return !formula(f.kids[0]);
      case FormulaKind::And: return formula(f.kids[0]) && formula(f.kids[1]);
      case FormulaKind::Or: return formula(f.kids[0]) || formula(f.kids[1]);
      case FormulaKind::Implies: return !formula(f.kids[0]) || formula(f.kids[1]);
      case FormulaKind::Iff: return formula(f.kids[0]) == formula(f.kids[1]);
      case FormulaKind::Exists: {
        std::int32_t saved = env[f.var];
        for (int e = 0; e < field.q(); ++e) {
          env[f.var] = e;
          if (formula(f.kids[0])) {
            env[f.var] = saved;
            return true;
          }
        }
        env[f.var] = saved;
        return false;
      }
      case FormulaKind::Forall: {
        std::int32_t saved = env[f.var];
        for (int e = 0; e < field.q(); ++e) {
          env[f.var] = e;
          if (!formula(f.kids[0])) {
            env[f.var] = saved;
            return false;
          }
        }
        env[f.var] = saved;
        return true;
      }
    }
    fail(Err::InvalidArgument, "corrupt formula");
  }
};

}  // namespace

Env make_env(int max_var) { return Env(static_cast<std::size_t>(max_var) + 1, -1); }

namespace {

bool contains_le(const Formula& f) {
  if (f.kind == FormulaKind::Le) return true;
  for (const Formula& k : f.kids)
    if (contains_le(k)) return true;
  return false;
}

bool contains_quantifier(const Formula& f) {
  if (f.kind == FormulaKind::Exists || f.kind == FormulaKind::Forall) return true;
  for (const Formula& k : f.kids)
    if (contains_quantifier(k)) return true;
  return false;
}

}  // namespace

bool eval(const Formula& f, const Gf& field, Env& env) {
  if (contains_le(f)) fail(Err::OrderUnsupported, "no order on " + field.name());
  std::size_t need = static_cast<std::size_t>(max_var_index(f)) + 1;
  if (env.size() < need) env.resize(need, -1);
  return GfEval{field, env}.formula(f);
}

bool eval_unchecked(const Formula& f, const Gf& field, Env& env) {
  return GfEval{field, env}.formula(f);
}

Gf::Elem eval_term(const Term& t, const Gf& field, Env& env) {
  std::size_t need = static_cast<std::size_t>(term_max_var(t)) + 1;
  if (env.size() < need) env.resize(need, -1);
  return static_cast<Gf::Elem>(GfEval{field, env}.term(t));
}

// ---- Evaluation over the rationals (quantifier-free) ----

namespace {

struct QEval {
  const Rationals& field;
  EnvQ& env;

  Rat term(const Term& t) const {
    switch (t.kind) {
      case TermKind::Var: {
        if (t.var >= static_cast<int>(env.size()) || !env[t.var])
          fail(Err::UnboundVariable, "v" + std::to_string(t.var) + " unbound in evaluation");
        return *env[t.var];
      }
      case TermKind::Zero: return Rat(0);
      case TermKind::One: return Rat(1);
      case TermKind::Add: return term(t.kids[0]) + term(t.kids[1]);
      case TermKind::Mul: return term(t.kids[0]) * term(t.kids[1]);
      case TermKind::Sub: return term(t.kids[0]) - term(t.kids[1]);
    }
    fail(Err::InvalidArgument, "corrupt term");
  }

  bool formula(const Formula& f) const {
    switch (f.kind) {
      case FormulaKind::Eq: return term(f.terms[0]) == term(f.terms[1]);
      case FormulaKind::Le: return term(f.terms[0]) <= term(f.terms[1]);
      case FormulaKind::RelApp:
        fail(Err::UnknownSymbol, "relation symbol '" + f.rel + "' in a field formula");
      case FormulaKind::Not: return !formula(f.kids[0]);
      case FormulaKind::And: return formula(f.kids[0]) && formula(f.kids[1]);
      case FormulaKind::Or: return formula(f.kids[0]) || formula(f.kids[1]);
      case FormulaKind::Implies: return !formula(f.kids[0]) || formula(f.kids[1]);
      case FormulaKind::Iff: return formula(f.kids[0]) == formula(f.kids[1]);
      case FormulaKind::Exists:
      case FormulaKind::Forall:
        fail(Err::NotEnumerable, "quantified evaluation over the rationals");
    }
    fail(Err::InvalidArgument, "corrupt formula");
  }
};

}  // namespace

bool eval(const Formula& f, const Rationals& field, EnvQ& env) {
  if (contains_quantifier(f))
    fail(Err::NotEnumerable, "quantified evaluation over the rationals");
  std::size_t need = static_cast<std::size_t>(max_var_index(f)) + 1;
  if (env.size() < need) env.resize(need);
  return QEval{field, env}.formula(f);
}

// ---- Compiled evaluation ----

CompiledGf::CompiledGf(const Formula& f) {
  max_var_ = max_var_index(f);
  root_ = compile_formula(f);
  for (const FNode& n : fnodes_)
    if (n.op == Op::Le) has_le_ = true;
}

std::int32_t CompiledGf::compile_term(const Term& t) {
  TNode n;
  n.kind = t.kind;
  n.var = t.var;
  if (!t.kids.empty()) {
    n.a = compile_term(t.kids[0]);
    n.b = compile_term(t.kids[1]);
  }
  tnodes_.push_back(n);
  return static_cast<std::int32_t>(tnodes_.size() - 1);
}

std::int32_t CompiledGf::compile_formula(const Formula& f) {
  FNode n;
  switch (f.kind) {
    case FormulaKind::Eq: n.op = Op::Eq; break;
    case FormulaKind::Le: n.op = Op::Le; break;
    case FormulaKind::RelApp: n.op = Op::RelApp; break;
    case FormulaKind::Not: n.op = Op::Not; break;
    case FormulaKind::And: n.op = Op::And; break;
    case FormulaKind::Or: n.op = Op::Or; break;
    case FormulaKind::Implies: n.op = Op::Implies; break;
    case FormulaKind::Iff: n.op = Op::Iff; break;
    case FormulaKind::Exists: n.op = Op::Exists; break;
    case FormulaKind::Forall: n.op = Op::Forall; break;
  }
  if (f.kind == FormulaKind::Eq || f.kind == FormulaKind::Le) {
    n.t0 = compile_term(f.terms[0]);
    n.t1 = compile_term(f.terms[1]);
  } else if (f.kind == FormulaKind::Exists || f.kind == FormulaKind::Forall) {
    n.var = f.var;
    const Formula& body = f.kids[0];
    // exists v (v = w & rest) binds v deterministically.
    if (f.kind == FormulaKind::Exists && body.kind == FormulaKind::And &&
        body.kids[0].kind == FormulaKind::Eq) {
      const Term& l = body.kids[0].terms[0];
      const Term& r = body.kids[0].terms[1];
      int other = 0;
      if (l.kind == TermKind::Var && r.kind == TermKind::Var) {
        if (l.var == f.var && r.var != f.var) other = r.var;
        else if (r.var == f.var && l.var != f.var) other = l.var;
      }
      if (other != 0) {
        n.op = Op::GuardedExists;
        n.guard = other;
        n.a = compile_formula(body.kids[1]);
        fnodes_.push_back(n);
        return static_cast<std::int32_t>(fnodes_.size() - 1);
      }
    }
    n.a = compile_formula(body);
  } else {
    n.a = compile_formula(f.kids[0]);
    if (f.kids.size() > 1) n.b = compile_formula(f.kids[1]);
  }
  fnodes_.push_back(n);
  return static_cast<std::int32_t>(fnodes_.size() - 1);
}

int CompiledGf::term_value(const Gf& field, const Env& env, std::int32_t idx) const {
  const TNode& n = tnodes_[idx];
  switch (n.kind) {
    case TermKind::Var: {
      std::int32_t v = env[n.var];
      if (v < 0) fail(Err::UnboundVariable, "v" + std::to_string(n.var) + " unbound in evaluation");
      return v;
    }
    case TermKind::Zero: return 0;
    case TermKind::One: return 1;
    case TermKind::Add:
      return field.add(static_cast<Gf::Elem>(term_value(field, env, n.a)),
                       static_cast<Gf::Elem>(term_value(field, env, n.b)));
    case TermKind::Mul:
      return field.mul(static_cast<Gf::Elem>(term_value(field, env, n.a)),
                       static_cast<Gf::Elem>(term_value(field, env, n.b)));
    case TermKind::Sub:
      return field.sub(static_cast<Gf::Elem>(term_value(field, env, n.a)),
                       static_cast<Gf::Elem>(term_value(field, env, n.b)));
  }
  fail(Err::InvalidArgument, "corrupt term");
}

bool CompiledGf::eval_node(const Gf& field, Env& env, std::int32_t idx) const {
  const FNode& n = fnodes_[idx];
  switch (n.op) {
    case Op::Eq: return term_value(field, env, n.t0) == term_value(field, env, n.t1);
    case Op::Le: fail(Err::OrderUnsupported, "no order on " + field.name());
    case Op::RelApp: fail(Err::UnknownSymbol, "relation symbol in a field formula");
    case Op::Not: return !eval_node(field, env, n.a);
    case Op::And: return eval_node(field, env, n.a) && eval_node(field, env, n.b);
    case Op::Or: return eval_node(field, env, n.a) || eval_node(field, env, n.b);
    case Op::Implies: return !eval_node(field, env, n.a) || eval_node(field, env, n.b);
    case Op::Iff: return eval_node(field, env, n.a) == eval_node(field, env, n.b);
    case Op::Exists: {
      std::int32_t saved = env[n.var];
      for (int e = 0; e < field.q(); ++e) {
        env[n.var] = e;
        if (eval_node(field, env, n.a)) {
          env[n.var] = saved;
          return true;
        }
      }
      env[n.var] = saved;
      return false;
    }
    case Op::Forall: {
      std::int32_t saved = env[n.var];
      for (int e = 0; e < field.q(); ++e) {
        env[n.var] = e;
        if (!eval_node(field, env, n.a)) {
          env[n.var] = saved;
          return false;
        }
      }
      env[n.var] = saved;
      return true;
    }
    case Op::GuardedExists: {
      std::int32_t w = env[n.guard];
      if (w < 0)
        fail(Err::UnboundVariable, "v" + std::to_string(n.guard) + " unbound in evaluation");
      std::int32_t saved = env[n.var];
      env[n.var] = w;
      bool r = eval_node(field, env, n.a);
      env[n.var] = saved;
      return r;
    }
  }
  fail(Err::InvalidArgument, "corrupt formula");
}

bool CompiledGf::eval(const Gf& field, Env& env) const {
  if (has_le_) fail(Err::OrderUnsupported, "no order on " + field.name());
  std::size_t need = static_cast<std::size_t>(max_var_) + 1;
  if (env.size() < need) env.resize(need, -1);
  return eval_node(field, env, root_);
}

}  // namespace geodef::fol
