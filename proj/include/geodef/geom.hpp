#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geodef/field.hpp"
#include "geodef/fol.hpp"
#include "geodef/util.hpp"

namespace geodef::geom {

/// Points of F^d are coordinate vectors of length d.
template <class F>
using Point = std::vector<typename F::Elem>;

/// (p1,...,pn) with each pi in F^d  ->  the dn-tuple of coordinates.
template <class Elem>
std::vector<Elem> flatten(const std::vector<std::vector<Elem>>& points) {
  std::vector<Elem> out;
  for (const auto& p : points) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// Inverse of flatten; the input length must be divisible by d.
template <class Elem>
std::vector<std::vector<Elem>> unflatten(const std::vector<Elem>& flat, int d) {
  if (d < 1 || flat.size() % static_cast<std::size_t>(d) != 0)
    fail(Err::LengthMismatch,
         "cannot split a tuple of length " + std::to_string(flat.size()) + " into points of dimension " +
             std::to_string(d));
  std::vector<std::vector<Elem>> out(flat.size() / d);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].assign(flat.begin() + i * d, flat.begin() + (i + 1) * d);
  return out;
}

// ---- Point indexing over finite fields ----
// A point gets the base-q integer with its first coordinate least
// significant; tuples of points extend the same positional scheme with
// radix q^d. This matches the bitset indexing of ExtRelation.

std::uint64_t point_count(const Gf& field, int d);
std::uint32_t point_index(const Gf& field, std::span<const Gf::Elem> coords);
Point<Gf> index_point(const Gf& field, int d, std::uint32_t idx);

/// Extensional n-ary relation on (F^d)^n over GF(q), stored as a bitset of
/// q^(dn) bits indexed by the positional encoding of the flattened tuple.
struct ExtRelation {
  int d = 0;
  int n = 0;
  int q = 0;
  Bitset bits;

  std::uint64_t tuple_space() const { return bits.size(); }
  std::uint64_t universe() const;  // q^d

  bool test_flat(std::uint64_t flat_index) const { return bits.test(flat_index); }
  /// Membership of a tuple given as point indices.
  bool test_points(std::span<const std::uint32_t> pts) const;
  void set_points(std::span<const std::uint32_t> pts, bool value);

  bool operator==(const ExtRelation&) const = default;
};

ExtRelation make_ext_relation(const Gf& field, int d, int n);

/// Capacity guard: q^(dn) bits must stay within this bound.
constexpr std::uint64_t kMaxRelationBits = std::uint64_t(1) << 30;

// ---- Semantic relations ----

/// Col(p,q,r): q = p + t(r-p) for some t, or r = p.
bool semantic_col(const Gf& field, std::span<const Gf::Elem> p, std::span<const Gf::Elem> q,
                  std::span<const Gf::Elem> r);
bool semantic_col(const Rationals& field, std::span<const Rat> p, std::span<const Rat> q,
                  std::span<const Rat> r);

/// Bw(p,q,r): q = p + t(r-p) for some t in [0,1]; ordered fields only.
bool semantic_bw(const Rationals& field, std::span<const Rat> p, std::span<const Rat> q,
                 std::span<const Rat> r);
/// Finite fields carry no order.
[[noreturn]] bool semantic_bw(const Gf& field, std::span<const Gf::Elem> p,
                              std::span<const Gf::Elem> q, std::span<const Gf::Elem> r);

/// (p,q) compared to (r,s) by the sum of squared coordinate differences.
template <class F>
bool semantic_cong(const F& field, std::span<const typename F::Elem> p,
                   std::span<const typename F::Elem> q, std::span<const typename F::Elem> r,
                   std::span<const typename F::Elem> s) {
  using E = typename F::Elem;
  auto sq_sum = [&](std::span<const E> a, std::span<const E> b) {
    E acc = field.zero();
    for (std::size_t i = 0; i < a.size(); ++i) {
      E diff = field.sub(a[i], b[i]);
      acc = field.add(acc, field.mul(diff, diff));
    }
    return acc;
  };
  return sq_sum(p, q) == sq_sum(r, s);
}

/// p and q lightlike related: (p1-q1)^2 equals the sum over the remaining
/// coordinates of the squared differences.
template <class F>
bool semantic_lambda(const F& field, std::span<const typename F::Elem> p,
                     std::span<const typename F::Elem> q) {
  using E = typename F::Elem;
  E lhs = field.sub(p[0], q[0]);
  lhs = field.mul(lhs, lhs);
  E rhs = field.zero();
  for (std::size_t i = 1; i < p.size(); ++i) {
    E diff = field.sub(p[i], q[i]);
    rhs = field.add(rhs, field.mul(diff, diff));
  }
  return lhs == rhs;
}

// ---- Materialization and geometries ----

/// Evaluates the defining formula on every flattened tuple of F^{dn}.
ExtRelation materialize(const fol::RelSymbol& r, const Gf& field, int d);
[[noreturn]] ExtRelation materialize(const fol::RelSymbol& r, const Rationals& field, int d);

struct NamedRelation {
  std::string name;
  fol::RelSymbol symbol;
  ExtRelation ext;
};

/// A finite relational structure on F^d whose relations are materialized
/// from field formulas. Duplicate extensions under distinct names are
/// allowed and kept.
struct Geometry {
  Gf field;
  int d = 2;
  std::vector<NamedRelation> rels;
  /// True when some listed symbol is the collinearity formula gamma(d)
  /// itself (the key relation named explicitly).
  bool key_relation_listed = false;

  std::uint64_t universe() const;
  const NamedRelation* find(const std::string& name) const;
};

Geometry build_geometry(std::vector<std::pair<std::string, fol::RelSymbol>> delta, const Gf& field,
                        int d);

/// The two-element-field fixture: {0,1}^3 with the origin and the three
/// standard basis vectors colored by singleton unary relations.
Geometry gf2_fixture();

/// Tarskian satisfaction over a geometry: the universe is the point set,
/// relation symbols look up materialized relations, terms must be plain
/// variables. Env maps variables to point indices.
bool eval_geom(const fol::Formula& f, const Geometry& g, fol::Env& env);

// ---- Serialization ----

/// Header (q,k,d,n) as little-endian uint32, then the bitset as raw
/// little-endian bytes.
void save_ext_relation(std::ostream& os, const ExtRelation& rel, const Gf& field);
ExtRelation load_ext_relation(std::istream& is, const Gf& field);

}  // namespace geodef::geom
