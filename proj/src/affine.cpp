#include "geodef/affine.hpp"

namespace geodef::affine {

std::uint64_t affine_group_order(const Gf& field, int d) {
  // |GL(d,q)| * q^d
  std::uint64_t q = field.q();
  std::uint64_t qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  std::uint64_t gl = 1;
  std::uint64_t qi = 1;
  for (int i = 0; i < d; ++i) {
    gl *= qd - qi;
    qi *= q;
  }
  return gl * qd;
}

std::vector<AffineMap<Gf>> enumerate_affine_group(const Gf& field, int d,
                                                  std::uint64_t capacity) {
  std::uint64_t order = affine_group_order(field, d);
  if (order > capacity)
    fail(Err::CapacityExceeded, "affine group of order " + std::to_string(order) +
                                    " exceeds capacity " + std::to_string(capacity));
  std::vector<AffineMap<Gf>> out;
  out.reserve(order);
  int q = field.q();
  std::uint64_t mat_count = 1;
  for (int i = 0; i < d * d; ++i) mat_count *= q;
  std::uint64_t vec_count = 1;
  for (int i = 0; i < d; ++i) vec_count *= q;

  for (std::uint64_t me = 0; me < mat_count; ++me) {
    Matrix<Gf> linear;
    linear.d = d;
    linear.a.resize(static_cast<std::size_t>(d) * d);
    // Row-major digits, last digit varying fastest, so ascending me is
    // lexicographic order on (L11, L12, ..., Ldd).
    std::uint64_t rest = me;
    for (int i = d * d - 1; i >= 0; --i) {
      linear.a[i] = static_cast<Gf::Elem>(rest % q);
      rest /= q;
    }
    if (!mat_invertible(field, linear)) continue;
    for (std::uint64_t ve = 0; ve < vec_count; ++ve) {
      Vec<Gf> t(d);
      std::uint64_t vr = ve;
      for (int i = d - 1; i >= 0; --i) {
        t[i] = static_cast<Gf::Elem>(vr % q);
        vr /= q;
      }
      out.push_back(AffineMap<Gf>{linear, std::move(t)});
    }
  }
  return out;
}

Perm to_perm(const Gf& field, const AffineMap<Gf>& m, int d) {
  std::uint64_t n = geom::point_count(field, d);
  Perm perm(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    geom::Point<Gf> p = geom::index_point(field, d, static_cast<std::uint32_t>(i));
    Vec<Gf> img = apply(field, m, p);
    perm[i] = static_cast<std::uint16_t>(geom::point_index(field, img));
  }
  return perm;
}

RespectCheck respects(const Perm& perm, const geom::ExtRelation& rel) {
  std::uint64_t u = rel.universe();
  int n = rel.n;
  std::vector<std::uint32_t> tuple(n, 0);
  // Iterate tuples in lexicographic order with the first component most
  // significant, so the first violation found is the least one.
  while (true) {
    std::uint64_t idx = 0;
    std::uint64_t img_idx = 0;
    for (int i = n; i-- > 0;) {
      idx = idx * u + tuple[i];
      img_idx = img_idx * u + perm[tuple[i]];
    }
    if (rel.bits.test(idx) != rel.bits.test(img_idx))
      return RespectCheck{false, tuple};
    int pos = n - 1;
    while (pos >= 0) {
      if (++tuple[pos] < u) break;
      tuple[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return RespectCheck{};
}

std::vector<AffineMap<Gf>> affaut_maps(const geom::Geometry& g, std::uint64_t capacity) {
  std::vector<AffineMap<Gf>> all = enumerate_affine_group(g.field, g.d, capacity);
  std::vector<AffineMap<Gf>> out;
  for (const AffineMap<Gf>& m : all) {
    Perm perm = to_perm(g.field, m, g.d);
    bool ok = true;
    for (const geom::NamedRelation& rel : g.rels)
      if (!respects(perm, rel.ext).ok) {
        ok = false;
        break;
      }
    if (ok) out.push_back(m);
  }
  return out;
}

namespace {

char digit_char(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

}  // namespace

std::string serialize_affine(const Gf& field, const AffineMap<Gf>& m) {
  (void)field;
  std::string s;
  for (const Gf::Elem& e : m.linear.a) s += digit_char(e);
  s += ';';
  for (const Gf::Elem& e : m.translation) s += digit_char(e);
  return s;
}

AffineMap<Gf> parse_affine_line(const Gf& field, int d, const std::string& line) {
  auto semi = line.find(';');
  if (semi == std::string::npos || semi != static_cast<std::size_t>(d) * d ||
      line.size() != static_cast<std::size_t>(d) * d + 1 + d)
    fail(Err::SyntaxError, "bad affine map line '" + line + "'");
  Matrix<Gf> linear;
  linear.d = d;
  linear.a.resize(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d * d; ++i) {
    int v = digit_value(line[i]);
    if (v < 0 || v >= field.q()) fail(Err::SyntaxError, "bad digit in affine map line");
    linear.a[i] = static_cast<Gf::Elem>(v);
  }
  Vec<Gf> t(d);
  for (int i = 0; i < d; ++i) {
    int v = digit_value(line[semi + 1 + i]);
    if (v < 0 || v >= field.q()) fail(Err::SyntaxError, "bad digit in affine map line");
    t[i] = static_cast<Gf::Elem>(v);
  }
  return make_affine(field, std::move(linear), std::move(t));
}

}  // namespace geodef::affine
