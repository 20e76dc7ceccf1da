#include "geodef/field.hpp"

#include <algorithm>
#include <numeric>

namespace geodef {

namespace {

constexpr int kMaxTableQ = 256;

// Dense polynomials over GF(p), coefficients c0..cn, possibly with trailing zeros.
using Poly = std::vector<int>;

int poly_deg(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != 0) return i;
  return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return r;
}

// Remainder of a modulo monic m.
Poly poly_mod(Poly a, const Poly& m, int p) {
  int dm = poly_deg(m);
  for (int da = poly_deg(a); da >= dm; da = poly_deg(a)) {
    int c = a[da];
    if (c != 0) {
      for (int i = 0; i <= dm; ++i) {
        int k = da - dm + i;
        a[k] = ((a[k] - c * m[i]) % p + p) % p;
      }
    }
  }
  a.resize(std::max(dm, 0));
  return a;
}

int poly_eval(const Poly& a, int x, int p) {
  int acc = 0;
  for (int i = poly_deg(a); i >= 0; --i) acc = (acc * x + a[i]) % p;
  return acc;
}

Poly poly_from_encoding(std::uint64_t enc, int deg, int p) {
  Poly c(deg + 1, 0);
  for (int i = 0; i < deg; ++i) {
    c[i] = static_cast<int>(enc % p);
    enc /= p;
  }
  c[deg] = 1;
  return c;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::span<const int> poly, int p) {
  Poly m(poly.begin(), poly.end());
  int k = poly_deg(m);
  if (k <= 0) return false;
  if (k == 1) return true;
  // A root gives a linear factor.
  for (int x = 0; x < p; ++x)
    if (poly_eval(m, x, p) == 0) return false;
  if (k <= 3) return true;
  // Trial division by every monic polynomial of degree 2..k/2.
  for (int dd = 2; dd <= k / 2; ++dd) {
    std::uint64_t count = ipow(p, dd);
    for (std::uint64_t enc = 0; enc < count; ++enc) {
      Poly div = poly_from_encoding(enc, dd, p);
      if (poly_deg(poly_mod(m, div, p)) < 0) return false;
    }
  }
  return true;
}

Gf::Gf(int p, int k, std::optional<std::vector<int>> modulus) {
  if (!is_prime(p)) fail(Err::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1) fail(Err::InvalidArgument, "extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxTableQ)
      fail(Err::CapacityExceeded, "field size exceeds table bound " + std::to_string(kMaxTableQ));
  }
  p_ = p;
  k_ = k;
  q_ = static_cast<int>(q);

  if (modulus) {
    modulus_ = *modulus;
    if (static_cast<int>(modulus_.size()) != k + 1 || modulus_.back() != 1)
      fail(Err::InvalidArgument, "modulus must be monic of degree k");
    for (int& c : modulus_) c = ((c % p) + p) % p;
    if (!is_irreducible(modulus_, p))
      fail(Err::ReducibleModulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
  } else {
    // Smallest monic irreducible of degree k, ordered by the base-p
    // encoding of its non-leading coefficients; keeps serialized artifacts
    // reproducible.
    std::uint64_t count = ipow(p, k);
    for (std::uint64_t enc = 0; enc < count; ++enc) {
      Poly cand = poly_from_encoding(enc, k, p);
      if (is_irreducible(cand, p)) {
        modulus_ = cand;
        break;
      }
    }
  }

  neg_.resize(q_);
  inv_.assign(q_, 0);
  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);

  for (int a = 0; a < q_; ++a) {
    Poly pa = coeffs_of(a);
    for (int b = 0; b < q_; ++b) {
      Poly pb = coeffs_of(b);
      Poly sum(k_, 0);
      for (int i = 0; i < k_; ++i) sum[i] = (pa[i] + pb[i]) % p_;
      add_[idx(a, b)] = static_cast<Elem>(encode(sum));
      Poly prod = poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
      prod.resize(k_, 0);
      mul_[idx(a, b)] = static_cast<Elem>(encode(prod));
    }
  }
  for (int a = 0; a < q_; ++a) {
    Poly pa = coeffs_of(a);
    Poly na(k_, 0);
    for (int i = 0; i < k_; ++i) na[i] = (p_ - pa[i]) % p_;
    neg_[a] = static_cast<Elem>(encode(na));
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[idx(a, b)] == 1) {
        inv_[a] = static_cast<Elem>(b);
        break;
      }
}

std::vector<int> Gf::coeffs(Elem a) const { return coeffs_of(a); }

std::vector<int> Gf::coeffs_of(int a) const {
  std::vector<int> c(k_, 0);
  for (int i = 0; i < k_; ++i) {
    c[i] = a % p_;
    a /= p_;
  }
  return c;
}

int Gf::encode(const std::vector<int>& c) const {
  int v = 0;
  for (int i = k_ - 1; i >= 0; --i) v = v * p_ + c[i];
  return v;
}

Gf::Elem Gf::from_coeffs(std::span<const int> c) const {
  std::vector<int> cc(k_, 0);
  for (std::size_t i = 0; i < c.size() && i < static_cast<std::size_t>(k_); ++i)
    cc[i] = ((c[i] % p_) + p_) % p_;
  return static_cast<Elem>(encode(cc));
}

Gf::Elem Gf::inv(Elem a) const {
  if (a == 0) fail(Err::ZeroDenominator, "inverse of zero in " + name());
  return inv_[a];
}

Gf::Elem Gf::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  Elem b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Gf::Elem Gf::frobenius(Elem a, int e) const {
  std::uint64_t pe = 1;
  for (int i = 0; i < e; ++i) pe *= p_;
  return pow(a, pe);
}

std::string Gf::name() const {
  if (k_ == 1) return "gf(" + std::to_string(p_) + ")";
  return "gf(" + std::to_string(p_) + "^" + std::to_string(k_) + ")";
}

Gf make_gf(int p, int k, std::optional<std::vector<int>> modulus) {
  return Gf(p, k, std::move(modulus));
}

std::vector<FieldAutomorphism> frobenius_group(const Gf& field) {
  std::vector<FieldAutomorphism> out;
  out.reserve(field.k());
  for (int e = 0; e < field.k(); ++e) out.push_back(FieldAutomorphism{e});
  return out;
}

Rat::Rat(const Int& num, const Int& den) : num_(num), den_(den) {
  if (den_ == 0) fail(Err::ZeroDenominator, "rational with zero denominator");
  normalize();
}

void Rat::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Int g = boost::multiprecision::gcd(num_ < 0 ? Int(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rat Rat::operator-() const {
  Rat r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rat Rat::operator+(const Rat& o) const {
  return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator-(const Rat& o) const {
  return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rat Rat::operator*(const Rat& o) const { return Rat(num_ * o.num_, den_ * o.den_); }

Rat Rat::operator/(const Rat& o) const {
  if (o.num_ == 0) fail(Err::ZeroDenominator, "division by zero rational");
  return Rat(num_ * o.den_, den_ * o.num_);
}

std::string Rat::str() const {
  std::string s = num_.str();
  if (den_ != 1) s += "/" + den_.str();
  return s;
}

Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Rat::Int(text));
    Rat::Int n(text.substr(0, slash));
    Rat::Int d(text.substr(slash + 1));
    return Rat(n, d);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Err::SyntaxError, "bad rational literal '" + text + "'");
  }
}

}  // namespace geodef
