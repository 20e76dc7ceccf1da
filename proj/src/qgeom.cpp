#include "geodef/qgeom.hpp"

#include <algorithm>
#include <istream>

namespace geodef::qgeom {

namespace {

const Rationals kQ;

Rat form_value(const QMat& m, const QVec& v) {
  Rat acc(0);
  for (int r = 0; r < m.d; ++r)
    for (int c = 0; c < m.d; ++c) acc = acc + m.at(r, c) * v[r] * v[c];
  return acc;
}

QMat transpose(const QMat& m) {
  QMat out;
  out.d = m.d;
  out.a.assign(m.a.size(), Rat(0));
  for (int r = 0; r < m.d; ++r)
    for (int c = 0; c < m.d; ++c) out.at(c, r) = m.at(r, c);
  return out;
}

QMat eta_matrix(int d) {
  QMat m;
  m.d = d;
  m.a.assign(static_cast<std::size_t>(d) * d, Rat(0));
  m.at(0, 0) = Rat(1);
  for (int i = 1; i < d; ++i) m.at(i, i) = Rat(-1);
  return m;
}

QMat scale(const QMat& m, const Rat& c) {
  QMat out = m;
  for (auto& e : out.a) e = e * c;
  return out;
}

QVec lmap(const QAffine& a, const QVec& v) { return affine::mat_vec(kQ, a.linear, v); }

Rat sq_norm(const QVec& v) {
  Rat acc(0);
  for (const Rat& x : v) acc = acc + x * x;
  return acc;
}

Rat eta_norm(const QVec& v) {
  Rat acc = v[0] * v[0];
  for (std::size_t i = 1; i < v.size(); ++i) acc = acc - v[i] * v[i];
  return acc;
}

}  // namespace

Rat QForm::eval(const QVec& v) const { return form_value(m, v); }

QForm qform_identity(int d) {
  QMat m;
  m.d = d;
  m.a.assign(static_cast<std::size_t>(d) * d, Rat(0));
  for (int i = 0; i < d; ++i) m.at(i, i) = Rat(1);
  return QForm{std::move(m)};
}

QForm qform_minkowski(int d) { return QForm{eta_matrix(d)}; }

bool respects_bw(const Rationals& field, const QAffine& a) {
  (void)field;
  if (!affine::mat_invertible(kQ, a.linear))
    fail(Err::SingularLinearPart, "linear part is not invertible");
  // q = p + t(r-p) maps to Aq = Ap + t(Ar-Ap) with the same t.
  return true;
}

bool respects_cong(const Rationals&, const QAffine& a) {
  QMat gram = affine::mat_mul(kQ, transpose(a.linear), a.linear);
  Rat c = gram.at(0, 0);
  if (c <= Rat(0)) return false;
  for (int r = 0; r < gram.d; ++r)
    for (int col = 0; col < gram.d; ++col) {
      Rat want = r == col ? c : Rat(0);
      if (gram.at(r, col) != want) return false;
    }
  return true;
}

bool respects_lightlike(const Rationals&, const QAffine& a) {
  int d = a.linear.d;
  QMat eta = eta_matrix(d);
  QMat m = affine::mat_mul(kQ, affine::mat_mul(kQ, transpose(a.linear), eta), a.linear);
  Rat c = m.at(0, 0);
  if (c.is_zero()) return false;
  if (m != scale(eta, c)) return false;
  // Direct cone check on the basis null vectors e1 +- ej; the sign of c
  // is whatever the cone allows (negative only in dimension two).
  for (int j = 1; j < d; ++j)
    for (int sgn = 0; sgn < 2; ++sgn) {
      QVec w(d, Rat(0));
      w[0] = Rat(1);
      w[j] = sgn ? Rat(-1) : Rat(1);
      if (!eta_norm(lmap(a, w)).is_zero()) return false;
    }
  if (d > 2 && c < Rat(0)) return false;
  return true;
}

namespace {

// Pairs (w, w') of equal squared norm: basis probes catch any deviation of
// L^T L from a scaled identity, random signed permutations add breadth.
std::vector<std::pair<QVec, QVec>> cong_probe_pairs(std::mt19937_64& rng, int d, int budget) {
  std::vector<std::pair<QVec, QVec>> out;
  auto unit = [&](int i) {
    QVec v(d, Rat(0));
    v[i] = Rat(1);
    return v;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      out.emplace_back(unit(i), unit(j));
      QVec plus(d, Rat(0)), minus(d, Rat(0));
      plus[i] = Rat(1);
      plus[j] = Rat(1);
      minus[i] = Rat(1);
      minus[j] = Rat(-1);
      out.emplace_back(plus, minus);
    }
  while (static_cast<int>(out.size()) < budget) {
    QVec w(d);
    for (int i = 0; i < d; ++i) w[i] = random_rat(rng);
    QVec w2(w);
    std::shuffle(w2.begin(), w2.end(), rng);
    for (int i = 0; i < d; ++i)
      if (rng() & 1) w2[i] = -w2[i];
    out.emplace_back(std::move(w), std::move(w2));
  }
  return out;
}

std::vector<QVec> null_probe_vectors(std::mt19937_64& rng, int d, int budget) {
  std::vector<QVec> out;
  for (int j = 1; j < d; ++j)
    for (int sgn = 0; sgn < 2; ++sgn) {
      QVec w(d, Rat(0));
      w[0] = Rat(1);
      w[j] = sgn ? Rat(-1) : Rat(1);
      out.push_back(std::move(w));
    }
  while (static_cast<int>(out.size()) < budget) {
    if (d == 2) {
      Rat t = random_rat(rng);
      if (t.is_zero()) continue;
      QVec w{t, (rng() & 1) ? t : -t};
      out.push_back(std::move(w));
    } else {
      // (a^2+b^2, 2ab, a^2-b^2) padded with zeros lands on the cone.
      Rat a = random_rat(rng);
      Rat b = random_rat(rng);
      QVec w(d, Rat(0));
      w[0] = a * a + b * b;
      if (w[0].is_zero()) continue;
      int j = 1 + static_cast<int>(rng() % (d - 1));
      int l = 1 + static_cast<int>(rng() % (d - 1));
      if (j == l) l = j == d - 1 ? 1 : j + 1;
      w[j] = Rat(2) * a * b;
      w[l] = a * a - b * b;
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace

std::optional<SampledWitness> sampled_cong_witness(const Rationals&, const QAffine& a,
                                                   std::uint64_t seed, int budget) {
  std::mt19937_64 rng(seed);
  int d = a.linear.d;
  for (auto& [w, w2] : cong_probe_pairs(rng, d, budget)) {
    if (sq_norm(w) != sq_norm(w2)) continue;  // random probes are exact by construction
    if (sq_norm(lmap(a, w)) != sq_norm(lmap(a, w2))) {
      QVec origin(d, Rat(0));
      return SampledWitness{{w, origin, w2, origin}};
    }
  }
  return std::nullopt;
}

std::optional<SampledWitness> sampled_lightlike_witness(const Rationals&, const QAffine& a,
                                                        std::uint64_t seed, int budget) {
  std::mt19937_64 rng(seed);
  int d = a.linear.d;
  for (QVec& w : null_probe_vectors(rng, d, budget)) {
    if (!eta_norm(w).is_zero()) continue;
    if (!eta_norm(lmap(a, w)).is_zero()) {
      QVec origin(d, Rat(0));
      return SampledWitness{{w, origin}};
    }
  }
  return std::nullopt;
}

Rat random_rat(std::mt19937_64& rng) {
  long long num = static_cast<long long>(rng() % 17) - 8;
  long long den = 1 + static_cast<long long>(rng() % 8);
  return rat(num, den);
}

QVec random_point(std::mt19937_64& rng, int d) {
  QVec v(d);
  for (int i = 0; i < d; ++i) v[i] = random_rat(rng);
  return v;
}

QAffine random_affine(std::mt19937_64& rng, const Rationals& field, int d) {
  while (true) {
    QMat m;
    m.d = d;
    m.a.resize(static_cast<std::size_t>(d) * d);
    for (auto& e : m.a) e = random_rat(rng);
    if (!affine::mat_invertible(field, m)) continue;
    QVec t = random_point(rng, d);
    return QAffine{std::move(m), std::move(t)};
  }
}

QAffine parse_qaffine(std::istream& is, int d) {
  auto next = [&] {
    std::string tok;
    if (!(is >> tok)) fail(Err::SyntaxError, "truncated affine map text");
    return parse_rat(tok);
  };
  QMat m;
  m.d = d;
  m.a.resize(static_cast<std::size_t>(d) * d);
  for (auto& e : m.a) e = next();
  QVec t(d);
  for (auto& e : t) e = next();
  return affine::make_affine(kQ, std::move(m), std::move(t));
}

}  // namespace geodef::qgeom
