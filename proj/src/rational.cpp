#include "galcas/rational.hpp"

#include <stdexcept>

namespace galcas::exact {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  // mpq_set_str accepts "a/b" but does not canonicalize and accepts 0 denominators
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
  if (r.get_den() == 0) throw std::domain_error("rational with zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace galcas::exact
