#pragma once

#include <gmpxx.h>

#include <string>

namespace qalg {

// Exact rational arithmetic throughout; no floating point anywhere.
// mpq_class keeps values canonical: lowest terms, positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "a" or "a/b" with optional sign; b must be nonzero.
Rational parse_rational(const std::string& text);

// "a" when the denominator is 1, otherwise "a/b".
std::string to_string(const Rational& r);

// Least common multiple of two positive integers.
Integer lcm(const Integer& a, const Integer& b);

}  // namespace qalg
