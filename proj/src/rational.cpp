#include "fansig/rational.hpp"

#include <ostream>

namespace fansig {

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::parse(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("rational literal with zero denominator: '" + s + "'");
  q.canonicalize();
  Rational r;
  r.v_ = q;
  return r;
}

std::string Rational::str() const { return v_.get_str(); }

long Rational::to_long() const {
  if (!is_integer() || !v_.get_num().fits_slong_p())
    throw std::domain_error("rational does not fit in long: " + str());
  return v_.get_num().get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, int k) {
  if (k < 0) throw std::domain_error("pow: negative exponent");
  Rational acc(1), base(r);
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

Rational factorial(int n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return Rational(b);
}

}  // namespace fansig
