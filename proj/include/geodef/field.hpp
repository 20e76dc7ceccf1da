#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "geodef/errors.hpp"

namespace geodef {

/// GF(p^k) with elements encoded as integer indices in [0, p^k).
/// Index i stands for the polynomial residue with base-p digits of i as
/// coefficients, constant coefficient first; so index 0 is the additive
/// identity and index 1 the multiplicative identity. Arithmetic is backed
/// by tables built at construction (capped at q <= 256).
class Gf {
public:
  using Elem = std::uint16_t;
  static constexpr bool ordered = false;

  Gf(int p, int k, std::optional<std::vector<int>> modulus = std::nullopt);

  int p() const { return p_; }
  int k() const { return k_; }
  int q() const { return q_; }

  /// Modulus coefficients c0..ck, monic (ck = 1). For k = 1 this is x.
  const std::vector<int>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
  Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add_[idx(a, neg_[b])]; }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  bool is_zero(Elem a) const { return a == 0; }

  Elem pow(Elem a, std::uint64_t e) const;
  /// x -> x^(p^e), the e-th Frobenius power.
  Elem frobenius(Elem a, int e) const;

  /// Base-p digits of an element index, constant coefficient first.
  std::vector<int> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const int> c) const;

  /// "gf(p)" or "gf(p^k)".
  std::string name() const;

  bool same_field(const Gf& other) const {
    return p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_;
  }

private:
  std::size_t idx(Elem a, Elem b) const {
    return static_cast<std::size_t>(a) * q_ + b;
  }
  std::vector<int> coeffs_of(int a) const;
  int encode(const std::vector<int>& c) const;

  int p_ = 0;
  int k_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  std::vector<Elem> add_;
  std::vector<Elem> mul_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
};

Gf make_gf(int p, int k, std::optional<std::vector<int>> modulus = std::nullopt);

/// x -> x^(p^exponent) on a fixed GF(p^k); exponent in [0, k).
struct FieldAutomorphism {
  int exponent = 0;

  Gf::Elem apply(const Gf& field, Gf::Elem a) const {
    return field.frobenius(a, exponent);
  }
  bool is_identity() const { return exponent == 0; }
};

/// All k automorphisms of GF(p^k), exponent order 0..k-1.
std::vector<FieldAutomorphism> frobenius_group(const Gf& field);

bool is_prime(int n);
/// Tests irreducibility of a monic polynomial (coefficients c0..ck, ck = 1)
/// over GF(p) by exhaustive trial division.
bool is_irreducible(std::span<const int> poly, int p);

/// Exact rational with arbitrary-precision numerator and positive
/// denominator, always in lowest terms.
class Rat {
public:
  using Int = boost::multiprecision::cpp_int;

  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}
  Rat(const Int& n) : num_(n), den_(1) {}
  Rat(const Int& num, const Int& den);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  Rat operator-() const;
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool operator<=(const Rat& o) const { return num_ * o.den_ <= o.num_ * den_; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  std::string str() const;

private:
  void normalize();

  Int num_;
  Int den_;
};

inline Rat rat(long long num, long long den) { return Rat(Rat::Int(num), Rat::Int(den)); }

/// Parses "a", "-a" or "a/b".
Rat parse_rat(const std::string& text);

/// The ordered field of rationals, as a stateless arithmetic domain with
/// the same operation surface as Gf (so geometry code can be generic).
class Rationals {
public:
  using Elem = Rat;
  static constexpr bool ordered = true;

  Elem zero() const { return Rat(0); }
  Elem one() const { return Rat(1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem div(const Elem& a, const Elem& b) const { return a / b; }
  Elem neg(const Elem& a) const { return -a; }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool leq(const Elem& a, const Elem& b) const { return a <= b; }
  std::string name() const { return "Q"; }
};

}  // namespace geodef
