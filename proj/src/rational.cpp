#include "qdr/rational.hpp"

#include "qdr/error.hpp"

namespace qdr {

Rational::Rational(long n, long d) {
  if (d == 0) throw StructuralError("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw StructuralError("cannot parse rational '" + s + "'");
  if (q.get_den() == 0) throw StructuralError("rational with zero denominator");
  q.canonicalize();
  return Rational(q);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw StructuralError("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::inverse() const {
  if (is_zero()) throw StructuralError("inverse of zero");
  return Rational(mpq_class(1 / v_));
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(mpq_class(num, den));
}

}  // namespace qdr
