#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "geodef/errors.hpp"
#include "geodef/field.hpp"

namespace geodef::fol {

enum class TermKind : std::uint8_t { Var, Zero, One, Add, Mul, Sub };

/// Terms of the field language. Sub is derived sugar; variables are
/// indexed from 1 (v1, v2, ...).
struct Term {
  TermKind kind = TermKind::Zero;
  int var = 0;
  std::vector<Term> kids;

  bool operator==(const Term&) const = default;
};

Term t_var(int i);
Term t_zero();
Term t_one();
Term t_add(Term a, Term b);
Term t_mul(Term a, Term b);
Term t_sub(Term a, Term b);
/// 0, 1, 1+1, 1+1+1, ... as a term.
Term t_const(int n);

enum class FormulaKind : std::uint8_t {
  Eq,
  Le,
  RelApp,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Exists,
  Forall,
};

struct Formula {
  FormulaKind kind = FormulaKind::Eq;
  int var = 0;             // Exists/Forall
  std::string rel;         // RelApp
  std::vector<Term> terms; // Eq/Le: two; RelApp: arguments
  std::vector<Formula> kids;

  bool operator==(const Formula&) const = default;
};

Formula f_eq(Term a, Term b);
Formula f_le(Term a, Term b);
Formula f_rel(std::string name, std::vector<Term> args);
Formula f_not(Formula a);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_exists(int var, Formula body);
Formula f_forall(int var, Formula body);
/// Left-associated conjunction; requires a nonempty list.
Formula conjoin(std::vector<Formula> fs);

std::set<int> free_vars(const Formula& f);
std::set<int> term_vars(const Term& t);
/// Largest variable index occurring anywhere (free or bound); 0 if none.
int max_var_index(const Formula& f);

/// Capture-avoiding substitution of terms for free variables. Bound
/// variables that would capture a substituted term are renamed above every
/// index in use.
Formula substitute(const Formula& f, const std::map<int, Term>& subst);

/// The nested-existential form of applying a formula whose free variables
/// sit in v1..v_m to target variables: exists v1 (v1 = t1 & ... exists v_m
/// (v_m = t_m & rho)). Slots where the target equals the slot variable are
/// skipped. Targets must not collide with not-yet-bound slots, which holds
/// for every use in this library (targets sit above the slot block).
Formula tarski_apply(const Formula& rho, std::span<const int> slot_vars,
                     std::span<const int> target_vars);

bool alpha_equal(const Formula& a, const Formula& b);

/// Relation symbol <rho, n>: a field formula whose free variables lie in
/// v1..v_{dn}, denoting an n-ary relation on points of F^d.
struct RelSymbol {
  Formula rho;
  int arity = 0;
};

/// Validates the free-variable constraint for dimension d.
RelSymbol make_rel_symbol(Formula rho, int arity, int d);

// ---- The named formulas ----

/// Collinearity formula, 3d free variables v1..v_{3d}; the witness
/// variable is v_{3d+1}.
Formula gamma(int d);
/// Ordered variant with the witness bounded into [0,1]; only evaluable
/// over ordered interpretations.
Formula beta(int d);
/// Linear independence of (x1-x0, ..., xd-x0); d^2+d free variables.
Formula iota(int d);
/// The frame map taking x to y; d^2+3d free variables laid out as
/// e0,...,ed, x, y.
Formula theta(int d);

enum class SubstMode {
  TarskiFootnote,  // nested existentials, the reference form
  Direct,          // capture-avoiding variable renaming
};

/// "The frame is independent and the frame map respects R";
/// d^2+d free variables.
Formula theta_r(const RelSymbol& r, int d, SubstMode mode = SubstMode::TarskiFootnote);
/// Conjunction of theta_r over a finite, nonempty set.
Formula theta_delta(std::span<const RelSymbol> delta, int d,
                    SubstMode mode = SubstMode::TarskiFootnote);

// ---- Parsing and printing ----

Formula parse(const std::string& text);
Term parse_term(const std::string& text);
std::string pretty_print(const Formula& f);
std::string pretty_print(const Term& t);

// ---- Evaluation ----

/// Partial assignment of field elements to variables, indexed by variable
/// number; -1 marks unbound.
using Env = std::vector<std::int32_t>;

Env make_env(int max_var);

/// Tarskian satisfaction over a finite field; quantifiers enumerate all q
/// elements. Le raises OrderUnsupported, relation symbols UnknownSymbol,
/// unbound free variables UnboundVariable.
bool eval(const Formula& f, const Gf& field, Env& env);

/// As eval, but assumes env.size() > max_var_index(f); used by sweeps that
/// evaluate one formula on millions of assignments.
bool eval_unchecked(const Formula& f, const Gf& field, Env& env);

Gf::Elem eval_term(const Term& t, const Gf& field, Env& env);

/// Rational-side evaluation: exact and ordered, but quantifier-free only
/// (quantifiers raise NotEnumerable).
using EnvQ = std::vector<std::optional<Rat>>;
bool eval(const Formula& f, const Rationals& field, EnvQ& env);

/// Flattened form of a formula for evaluation sweeps over millions of
/// assignments. Semantics matches eval() exactly; the one shortcut taken
/// is that a quantifier of the shape exists v (v = w & body), as produced
/// by Tarskian substitution, binds v to w's value directly instead of
/// scanning the universe.
class CompiledGf {
public:
  explicit CompiledGf(const Formula& f);

  bool eval(const Gf& field, Env& env) const;
  int max_var() const { return max_var_; }

private:
  struct TNode {
    TermKind kind;
    std::int32_t var = 0;
    std::int32_t a = -1;
    std::int32_t b = -1;
  };
  enum class Op : std::uint8_t {
    Eq, Le, RelApp, Not, And, Or, Implies, Iff, Exists, Forall, GuardedExists,
  };
  struct FNode {
    Op op;
    std::int32_t var = 0;    // quantifiers; guard target for GuardedExists
    std::int32_t guard = 0;  // GuardedExists: variable the bound one copies
    std::int32_t a = -1;
    std::int32_t b = -1;
    std::int32_t t0 = -1;
    std::int32_t t1 = -1;
  };

  std::int32_t compile_term(const Term& t);
  std::int32_t compile_formula(const Formula& f);
  int term_value(const Gf& field, const Env& env, std::int32_t idx) const;
  bool eval_node(const Gf& field, Env& env, std::int32_t idx) const;

  std::vector<TNode> tnodes_;
  std::vector<FNode> fnodes_;
  std::int32_t root_ = -1;
  int max_var_ = 0;
  bool has_le_ = false;
};

}  // namespace geodef::fol
