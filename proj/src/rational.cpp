#include "qalg/rational.hpp"

#include "qalg/errors.hpp"

namespace qalg {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError(0, 0, "empty rational literal");
  try {
    Rational r(text);  // GMP accepts "a" and "a/b"
    if (r.get_den() == 0) throw ParseError(0, 0, "zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError(0, 0, "malformed rational literal '" + text + "'");
  }
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer result;
  mpz_lcm(result.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return result;
}

}  // namespace qalg
