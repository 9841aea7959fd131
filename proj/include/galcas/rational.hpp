#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace galcas::exact {

using Integer = mpz_class;
// mpq_class keeps every value canonical (lowest terms, positive denominator)
// after arithmetic; only raw construction from a numerator/denominator pair
// needs an explicit canonicalize(), which make_rational does.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "a", "-a" or "a/b" into a canonical rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

Integer factorial(unsigned long n);

inline bool is_canonical(const Rational& r) {
  if (sgn(r.get_den()) <= 0) return false;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return g == 1;
}

}  // namespace galcas::exact
