#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace fansig {

// Exact rational scalar.
//
// Thin value wrapper around GMP's mpq_class that (a) keeps every value in
// canonical form (normalized sign, gcd(num, den) = 1), and (b) never exposes
// GMP's expression templates, so `auto` and Eigen expressions behave exactly
// as they do for builtin scalars.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(const mpz_class& n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) { canonicalize(); }
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    canonicalize();
  }

  // Accepts "p", "p/q", optional leading '-'. Throws std::invalid_argument.
  static Rational parse(const std::string& s);

  // Canonical text form: "p" for integers, "p/q" otherwise.
  std::string str() const;

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  // Exact conversion; throws if not an integer that fits in long.
  long to_long() const;

  Rational operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
  }
  Rational& operator+=(const Rational& o) {
    v_ += o.v_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    v_ -= o.v_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    v_ *= o.v_;
    return *this;
  }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r(a);
    r += b;
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r(a);
    r -= b;
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r(a);
    r *= b;
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    Rational r(a);
    r /= b;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) > 0;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) >= 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  void canonicalize() {
    if (v_.get_den() == 0) throw std::invalid_argument("rational with denominator 0");
    v_.canonicalize();
  }
  mpq_class v_;
};

Rational abs(const Rational& r);

// r^k for k >= 0 (k = 0 gives 1, including 0^0).
Rational pow(const Rational& r, int k);

// n! as an exact rational (convenience for series coefficients).
Rational factorial(int n);

// Binomial coefficient C(n, k), 0 for k < 0 or k > n.
Rational binomial(int n, int k);

}  // namespace fansig

namespace Eigen {

template <>
struct NumTraits<fansig::Rational> : GenericNumTraits<fansig::Rational> {
  typedef fansig::Rational Real;
  typedef fansig::Rational NonInteger;
  typedef fansig::Rational Nested;
  typedef fansig::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 20,
    MulCost = 20,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
