#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geodef/errors.hpp"
#include "geodef/field.hpp"
#include "geodef/geom.hpp"

namespace geodef::affine {

/// Small dense d x d matrix over a field, row-major.
template <class F>
struct Matrix {
  int d = 0;
  std::vector<typename F::Elem> a;

  static Matrix identity(const F& field, int d) {
    Matrix m;
    m.d = d;
    m.a.assign(static_cast<std::size_t>(d) * d, field.zero());
    for (int i = 0; i < d; ++i) m.at(i, i) = field.one();
    return m;
  }

  typename F::Elem& at(int r, int c) { return a[static_cast<std::size_t>(r) * d + c]; }
  const typename F::Elem& at(int r, int c) const { return a[static_cast<std::size_t>(r) * d + c]; }

  bool operator==(const Matrix&) const = default;
};

template <class F>
using Vec = std::vector<typename F::Elem>;

template <class F>
Vec<F> mat_vec(const F& field, const Matrix<F>& m, std::span<const typename F::Elem> v) {
  Vec<F> out(m.d, field.zero());
  for (int r = 0; r < m.d; ++r)
    for (int c = 0; c < m.d; ++c)
      out[r] = field.add(out[r], field.mul(m.at(r, c), v[c]));
  return out;
}

template <class F>
Matrix<F> mat_mul(const F& field, const Matrix<F>& x, const Matrix<F>& y) {
  Matrix<F> out;
  out.d = x.d;
  out.a.assign(static_cast<std::size_t>(x.d) * x.d, field.zero());
  for (int r = 0; r < x.d; ++r)
    for (int k = 0; k < x.d; ++k)
      for (int c = 0; c < x.d; ++c)
        out.at(r, c) = field.add(out.at(r, c), field.mul(x.at(r, k), y.at(k, c)));
  return out;
}

/// Gauss-Jordan over an exact field; nullopt when singular.
template <class F>
std::optional<Matrix<F>> mat_inverse(const F& field, Matrix<F> m) {
  int d = m.d;
  Matrix<F> inv = Matrix<F>::identity(field, d);
  for (int col = 0; col < d; ++col) {
    int pivot = -1;
    for (int r = col; r < d; ++r)
      if (!field.is_zero(m.at(r, col))) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    if (pivot != col)
      for (int c = 0; c < d; ++c) {
        std::swap(m.at(pivot, c), m.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    typename F::Elem scale = field.div(field.one(), m.at(col, col));
    for (int c = 0; c < d; ++c) {
      m.at(col, c) = field.mul(m.at(col, c), scale);
      inv.at(col, c) = field.mul(inv.at(col, c), scale);
    }
    for (int r = 0; r < d; ++r) {
      if (r == col || field.is_zero(m.at(r, col))) continue;
      typename F::Elem factor = m.at(r, col);
      for (int c = 0; c < d; ++c) {
        m.at(r, c) = field.sub(m.at(r, c), field.mul(factor, m.at(col, c)));
        inv.at(r, c) = field.sub(inv.at(r, c), field.mul(factor, inv.at(col, c)));
      }
    }
  }
  return inv;
}

template <class F>
bool mat_invertible(const F& field, const Matrix<F>& m) {
  return mat_inverse(field, m).has_value();
}

/// p -> L p + t with L invertible; invertibility is checked at
/// construction via make_affine.
template <class F>
struct AffineMap {
  Matrix<F> linear;
  Vec<F> translation;

  bool operator==(const AffineMap&) const = default;
};

template <class F>
AffineMap<F> make_affine(const F& field, Matrix<F> linear, Vec<F> translation) {
  if (static_cast<int>(translation.size()) != linear.d)
    fail(Err::LengthMismatch, "translation length differs from matrix dimension");
  if (!mat_invertible(field, linear))
    fail(Err::SingularLinearPart, "linear part is not invertible");
  return AffineMap<F>{std::move(linear), std::move(translation)};
}

template <class F>
AffineMap<F> affine_identity(const F& field, int d) {
  return AffineMap<F>{Matrix<F>::identity(field, d), Vec<F>(d, field.zero())};
}

template <class F>
Vec<F> apply(const F& field, const AffineMap<F>& m, std::span<const typename F::Elem> p) {
  Vec<F> out = mat_vec(field, m.linear, p);
  for (int i = 0; i < m.linear.d; ++i) out[i] = field.add(out[i], m.translation[i]);
  return out;
}

/// compose(a,b) acts as p -> a(b(p)).
template <class F>
AffineMap<F> compose(const F& field, const AffineMap<F>& a, const AffineMap<F>& b) {
  AffineMap<F> out;
  out.linear = mat_mul(field, a.linear, b.linear);
  out.translation = mat_vec(field, a.linear, b.translation);
  for (int i = 0; i < a.linear.d; ++i)
    out.translation[i] = field.add(out.translation[i], a.translation[i]);
  return out;
}

template <class F>
AffineMap<F> invert(const F& field, const AffineMap<F>& m) {
  auto inv = mat_inverse(field, m.linear);
  if (!inv) fail(Err::SingularLinearPart, "linear part is not invertible");
  AffineMap<F> out;
  out.linear = std::move(*inv);
  Vec<F> nt = mat_vec(field, out.linear, m.translation);
  out.translation.resize(nt.size());
  for (std::size_t i = 0; i < nt.size(); ++i) out.translation[i] = field.neg(nt[i]);
  return out;
}

/// The unique affine map sending the origin to e0 and the j-th unit vector
/// to frame[j-1]; exists iff the difference vectors are independent.
template <class F>
AffineMap<F> frame_map(const F& field, std::span<const typename F::Elem> e0,
                       const std::vector<Vec<F>>& frame) {
  int d = static_cast<int>(e0.size());
  if (static_cast<int>(frame.size()) != d)
    fail(Err::LengthMismatch, "a frame needs d target points besides the origin image");
  Matrix<F> linear;
  linear.d = d;
  linear.a.assign(static_cast<std::size_t>(d) * d, field.zero());
  for (int j = 0; j < d; ++j)
    for (int r = 0; r < d; ++r) linear.at(r, j) = field.sub(frame[j][r], e0[r]);
  if (!mat_invertible(field, linear))
    fail(Err::DependentFrame, "frame difference vectors are linearly dependent");
  return AffineMap<F>{std::move(linear), Vec<F>(e0.begin(), e0.end())};
}

// ---- Finite-field specifics ----

using Perm = std::vector<std::uint16_t>;

std::uint64_t affine_group_order(const Gf& field, int d);

/// All affine maps of GF(q)^d in lexicographic order of the row-major
/// digits of L followed by t. Capacity-bounded.
std::vector<AffineMap<Gf>> enumerate_affine_group(const Gf& field, int d,
                                                  std::uint64_t capacity = 10'000'000);

/// The point permutation induced by an affine map.
Perm to_perm(const Gf& field, const AffineMap<Gf>& m, int d);

struct RespectCheck {
  bool ok = true;
  /// Lexicographically least violating tuple of point indices, when !ok.
  std::vector<std::uint32_t> counterexample;
};

/// Does the point bijection preserve membership in both directions on
/// every tuple?
RespectCheck respects(const Perm& perm, const geom::ExtRelation& rel);

/// Affine maps of the geometry's space that respect all its relations,
/// in enumeration order.
std::vector<AffineMap<Gf>> affaut_maps(const geom::Geometry& g,
                                       std::uint64_t capacity = 10'000'000);

/// "L;t" with base-q digits (0-9 then a-z), row-major L.
std::string serialize_affine(const Gf& field, const AffineMap<Gf>& m);
AffineMap<Gf> parse_affine_line(const Gf& field, int d, const std::string& line);

}  // namespace geodef::affine
