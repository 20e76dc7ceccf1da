#include "geodef/geom.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace geodef::geom {

std::uint64_t point_count(const Gf& field, int d) {
  std::uint64_t c = 1;
  for (int i = 0; i < d; ++i) c *= static_cast<std::uint64_t>(field.q());
  return c;
}

std::uint32_t point_index(const Gf& field, std::span<const Gf::Elem> coords) {
  std::uint64_t idx = 0;
  for (std::size_t i = coords.size(); i-- > 0;) idx = idx * field.q() + coords[i];
  return static_cast<std::uint32_t>(idx);
}

Point<Gf> index_point(const Gf& field, int d, std::uint32_t idx) {
  Point<Gf> p(d);
  for (int i = 0; i < d; ++i) {
    p[i] = static_cast<Gf::Elem>(idx % field.q());
    idx /= field.q();
  }
  return p;
}

std::uint64_t ExtRelation::universe() const {
  std::uint64_t c = 1;
  for (int i = 0; i < d; ++i) c *= static_cast<std::uint64_t>(q);
  return c;
}

bool ExtRelation::test_points(std::span<const std::uint32_t> pts) const {
  std::uint64_t u = universe();
  std::uint64_t idx = 0;
  for (std::size_t i = pts.size(); i-- > 0;) idx = idx * u + pts[i];
  return bits.test(idx);
}

void ExtRelation::set_points(std::span<const std::uint32_t> pts, bool value) {
  std::uint64_t u = universe();
  std::uint64_t idx = 0;
  for (std::size_t i = pts.size(); i-- > 0;) idx = idx * u + pts[i];
  bits.assign(idx, value);
}

ExtRelation make_ext_relation(const Gf& field, int d, int n) {
  if (d < 2) fail(Err::DimensionTooSmall, "dimension must be >= 2");
  if (n < 1) fail(Err::InvalidArgument, "arity must be >= 1");
  std::uint64_t space = 1;
  for (int i = 0; i < d * n; ++i) {
    if (space > kMaxRelationBits / field.q())
      fail(Err::CapacityExceeded, "relation of " + std::to_string(field.q()) + "^" +
                                      std::to_string(d * n) + " tuples exceeds the bitset bound");
    space *= static_cast<std::uint64_t>(field.q());
  }
  ExtRelation rel;
  rel.d = d;
  rel.n = n;
  rel.q = field.q();
  rel.bits = Bitset(space);
  return rel;
}

// ---- Semantic relations ----

bool semantic_col(const Gf& field, std::span<const Gf::Elem> p, std::span<const Gf::Elem> q,
                  std::span<const Gf::Elem> r) {
  bool r_eq_p = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (r[i] != p[i]) {
      r_eq_p = false;
      break;
    }
  if (r_eq_p) return true;
  for (int t = 0; t < field.q(); ++t) {
    bool ok = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Gf::Elem rhs = field.add(p[i], field.mul(static_cast<Gf::Elem>(t), field.sub(r[i], p[i])));
      if (q[i] != rhs) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

namespace {

// Solves q = p + t(r-p) componentwise over the rationals; returns the
// parameter when one exists.
std::optional<Rat> line_parameter(std::span<const Rat> p, std::span<const Rat> q,
                                  std::span<const Rat> r) {
  std::optional<Rat> t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat dr = r[i] - p[i];
    Rat dq = q[i] - p[i];
    if (dr.is_zero()) {
      if (!dq.is_zero()) return std::nullopt;
    } else if (!t) {
      t = dq / dr;
    }
  }
  if (!t) return std::nullopt;  // r = p; caller handles that case
  for (std::size_t i = 0; i < p.size(); ++i) {
    Rat rhs = p[i] + *t * (r[i] - p[i]);
    if (q[i] != rhs) return std::nullopt;
  }
  return t;
}

bool points_equal(std::span<const Rat> a, std::span<const Rat> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

bool semantic_col(const Rationals&, std::span<const Rat> p, std::span<const Rat> q,
                  std::span<const Rat> r) {
  if (points_equal(r, p)) return true;
  return line_parameter(p, q, r).has_value();
}

bool semantic_bw(const Rationals&, std::span<const Rat> p, std::span<const Rat> q,
                 std::span<const Rat> r) {
  if (points_equal(r, p)) return points_equal(q, p);
  auto t = line_parameter(p, q, r);
  return t && Rat(0) <= *t && *t <= Rat(1);
}

bool semantic_bw(const Gf& field, std::span<const Gf::Elem>, std::span<const Gf::Elem>,
                 std::span<const Gf::Elem>) {
  fail(Err::OrderUnsupported, "betweenness needs an ordered field, not " + field.name());
}

// ---- Materialization ----

ExtRelation materialize(const fol::RelSymbol& r, const Gf& field, int d) {
  ExtRelation rel = make_ext_relation(field, d, r.arity);
  int nvars = d * r.arity;
  fol::Env env = fol::make_env(std::max(nvars, fol::max_var_index(r.rho)));
  std::uint64_t space = rel.tuple_space();
  for (std::uint64_t idx = 0; idx < space; ++idx) {
    std::uint64_t rest = idx;
    for (int v = 1; v <= nvars; ++v) {
      env[v] = static_cast<std::int32_t>(rest % field.q());
      rest /= field.q();
    }
    if (fol::eval_unchecked(r.rho, field, env)) rel.bits.set(idx);
  }
  return rel;
}

ExtRelation materialize(const fol::RelSymbol&, const Rationals&, int) {
  fail(Err::NotEnumerable, "cannot materialize a relation over the rationals");
}

std::uint64_t Geometry::universe() const { return point_count(field, d); }

const NamedRelation* Geometry::find(const std::string& name) const {
  for (const NamedRelation& r : rels)
    if (r.name == name) return &r;
  return nullptr;
}

Geometry build_geometry(std::vector<std::pair<std::string, fol::RelSymbol>> delta,
                        const Gf& field, int d) {
  if (delta.empty()) fail(Err::EmptyDelta, "a geometry needs at least one relation");
  if (d < 2) fail(Err::DimensionTooSmall, "dimension must be >= 2");
  Geometry g{field, d, {}, false};
  fol::Formula key = fol::gamma(d);
  for (auto& [name, sym] : delta) {
    NamedRelation nr;
    nr.name = name;
    nr.ext = materialize(sym, field, d);
    if (sym.arity == 3 && sym.rho == key) g.key_relation_listed = true;
    nr.symbol = std::move(sym);
    g.rels.push_back(std::move(nr));
  }
  return g;
}

Geometry gf2_fixture() {
  Gf f2 = make_gf(2, 1);
  auto unit_formula = [](int x, int y, int z) {
    using namespace fol;
    auto bit = [](int v, int b) { return f_eq(t_var(v), b ? t_one() : t_zero()); };
    return f_and(f_and(bit(1, x), bit(2, y)), bit(3, z));
  };
  std::vector<std::pair<std::string, fol::RelSymbol>> delta;
  delta.emplace_back("O", fol::make_rel_symbol(unit_formula(0, 0, 0), 1, 3));
  delta.emplace_back("Ux", fol::make_rel_symbol(unit_formula(1, 0, 0), 1, 3));
  delta.emplace_back("Uy", fol::make_rel_symbol(unit_formula(0, 1, 0), 1, 3));
  delta.emplace_back("Uz", fol::make_rel_symbol(unit_formula(0, 0, 1), 1, 3));
  return build_geometry(std::move(delta), f2, 3);
}

// ---- Evaluation over a geometry ----

namespace {

struct GeomEval {
  const Geometry& g;
  fol::Env& env;
  std::uint32_t universe;

  std::uint32_t point(const fol::Term& t) const {
    if (t.kind != fol::TermKind::Var)
      fail(Err::InvalidArgument, "geometry formulas may only apply relations to variables");
    std::int32_t v = env[t.var];
    if (v < 0) fail(Err::UnboundVariable, "v" + std::to_string(t.var) + " unbound in evaluation");
    return static_cast<std::uint32_t>(v);
  }

  bool formula(const fol::Formula& f) const {
    using fol::FormulaKind;
    switch (f.kind) {
      case FormulaKind::Eq: return point(f.terms[0]) == point(f.terms[1]);
      case FormulaKind::Le:
        fail(Err::OrderUnsupported, "no order on geometry points");
      case FormulaKind::RelApp: {
        const NamedRelation* rel = g.find(f.rel);
        if (!rel) fail(Err::UnknownSymbol, "relation '" + f.rel + "' not in the geometry");
        if (rel->symbol.arity != static_cast<int>(f.terms.size()))
          fail(Err::InvalidArgument, "arity mismatch for '" + f.rel + "'");
        std::vector<std::uint32_t> pts(f.terms.size());
        for (std::size_t i = 0; i < f.terms.size(); ++i) pts[i] = point(f.terms[i]);
        return rel->ext.test_points(pts);
      }
      case FormulaKind::Not: return !formula(f.kids[0]);
      case FormulaKind::And: return formula(f.kids[0]) && formula(f.kids[1]);
      case FormulaKind::Or: return formula(f.kids[0]) || formula(f.kids[1]);
      case FormulaKind::Implies: return !formula(f.kids[0]) || formula(f.kids[1]);
      case FormulaKind::Iff: return formula(f.kids[0]) == formula(f.kids[1]);
      case FormulaKind::Exists: {
        std::int32_t saved = env[f.var];
        for (std::uint32_t e = 0; e < universe; ++e) {
          env[f.var] = static_cast<std::int32_t>(e);
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
        for (std::uint32_t e = 0; e < universe; ++e) {
          env[f.var] = static_cast<std::int32_t>(e);
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

namespace {

bool geom_contains_le(const fol::Formula& f) {
  if (f.kind == fol::FormulaKind::Le) return true;
  for (const fol::Formula& k : f.kids)
    if (geom_contains_le(k)) return true;
  return false;
}

}  // namespace

bool eval_geom(const fol::Formula& f, const Geometry& g, fol::Env& env) {
  if (geom_contains_le(f)) fail(Err::OrderUnsupported, "no order on geometry points");
  std::size_t need = static_cast<std::size_t>(fol::max_var_index(f)) + 1;
  if (env.size() < need) env.resize(need, -1);
  return GeomEval{g, env, static_cast<std::uint32_t>(g.universe())}.formula(f);
}

// ---- Serialization ----

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) fail(Err::InvalidArgument, "truncated relation stream");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void save_ext_relation(std::ostream& os, const ExtRelation& rel, const Gf& field) {
  put_u32(os, static_cast<std::uint32_t>(rel.q));
  put_u32(os, static_cast<std::uint32_t>(field.k()));
  put_u32(os, static_cast<std::uint32_t>(rel.d));
  put_u32(os, static_cast<std::uint32_t>(rel.n));
  std::uint64_t nbytes = (rel.bits.size() + 7) / 8;
  for (std::uint64_t i = 0; i < nbytes; ++i) {
    std::uint64_t word = rel.bits.words()[i / 8];
    unsigned char byte = static_cast<unsigned char>((word >> ((i % 8) * 8)) & 0xff);
    os.write(reinterpret_cast<const char*>(&byte), 1);
  }
}

ExtRelation load_ext_relation(std::istream& is, const Gf& field) {
  std::uint32_t q = get_u32(is);
  std::uint32_t k = get_u32(is);
  std::uint32_t d = get_u32(is);
  std::uint32_t n = get_u32(is);
  if (q != static_cast<std::uint32_t>(field.q()) || k != static_cast<std::uint32_t>(field.k()))
    fail(Err::FieldMismatch, "relation stream was written for a different field");
  ExtRelation rel = make_ext_relation(field, static_cast<int>(d), static_cast<int>(n));
  std::uint64_t nbytes = (rel.bits.size() + 7) / 8;
  for (std::uint64_t i = 0; i < nbytes; ++i) {
    unsigned char byte;
    is.read(reinterpret_cast<char*>(&byte), 1);
    if (!is) fail(Err::InvalidArgument, "truncated relation stream");
    rel.bits.words()[i / 8] |= static_cast<std::uint64_t>(byte) << ((i % 8) * 8);
  }
  return rel;
}

}  // namespace geodef::geom
