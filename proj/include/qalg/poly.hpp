#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qalg/rational.hpp"

namespace qalg {

using VarId = int;

// A ring variable: either a base Boolean variable v or its formal twin ~v.
class ExtVar {
 public:
  ExtVar() : code_(0) {}
  ExtVar(VarId base, bool twin)
      : code_((static_cast<std::int32_t>(base) << 1) | (twin ? 1 : 0)) {}

  VarId base() const { return static_cast<VarId>(code_ >> 1); }
  bool is_twin() const { return (code_ & 1) != 0; }

  auto operator<=>(const ExtVar&) const = default;

 private:
  std::int32_t code_;
};

inline ExtVar base_var(VarId v) { return ExtVar(v, false); }
inline ExtVar twin_var(VarId v) { return ExtVar(v, true); }

// Total or partial assignment of base variables; twins evaluate as 1 - v.
using Assignment = std::map<VarId, bool>;

// Power product over V and twin(V). Entries are sorted by variable and
// carry strictly positive exponents; the empty product is the constant 1.
class Monomial {
 public:
  using Factors = std::vector<std::pair<ExtVar, int>>;

  Monomial() = default;
  static Monomial one() { return Monomial(); }
  static Monomial of(ExtVar v, int exp = 1);

  const Factors& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int exponent(ExtVar v) const;
  bool contains(ExtVar v) const { return exponent(v) > 0; }
  bool contains_base(VarId v) const;
  bool multilinear_twin_free() const;

  Monomial times(const Monomial& other) const;
  Monomial times(ExtVar v, int exp = 1) const;
  // Exact division; fails (returns false) if some exponent would go negative.
  bool divide(const Monomial& divisor, Monomial* quotient) const;
  // Drop every occurrence of v (used by substitutions v := 0/1).
  Monomial without(ExtVar v) const;
  // Drop both v and ~v.
  Monomial without_base(VarId v) const;

  Rational evaluate(const Assignment& alpha) const;

  // Graded lexicographic: total degree first, then factor lists.
  std::strong_ordering operator<=>(const Monomial& other) const;
  bool operator==(const Monomial& other) const = default;

 private:
  Factors factors_;
};

// Sum of exponents of factors whose base variable satisfies pred.
template <typename Pred>
int count_occurrences(const Monomial& m, Pred pred) {
  int count = 0;
  for (const auto& [v, e] : m.factors()) {
    if (pred(v.base())) count += e;
  }
  return count;
}

// Sparse multivariate polynomial over Q[V, twin(V)]. Zero coefficients are
// never stored; the zero polynomial has no terms. Immutable value semantics:
// all operations return new values.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(Rational constant);
  Polynomial(Monomial m, Rational coefficient);

  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return Polynomial(Rational(1)); }
  static Polynomial variable(ExtVar v);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t monomial_count() const { return terms_.size(); }
  int degree() const;  // max total degree; 0 for the zero polynomial
  Rational coefficient(const Monomial& m) const;

  std::set<ExtVar> vars() const;
  std::set<VarId> base_vars() const;
  bool mentions_base(VarId v) const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);

  Polynomial times(const Monomial& m) const;
  Polynomial scale(const Rational& c) const;

  // Exact evaluation; every base variable must be assigned, twins evaluate
  // as 1 - alpha(v). Throws UnassignedVariable otherwise.
  Rational evaluate(const Assignment& alpha) const;

  // Substitutes v := b and ~v := 1 - b simultaneously.
  Polynomial restrict(VarId v, bool b) const;

  // Substitution of an arbitrary polynomial for one base variable, with
  // ~v := 1 - p. Used by generic rewriting; exponents expand via powers.
  Polynomial substitute_base(VarId v, const Polynomial& p) const;

  void add_term(const Monomial& m, const Rational& c);

  bool operator==(const Polynomial& other) const = default;

  // Grammar: terms joined by +/-, term = optional rational coefficient and
  // '*'-separated factors x<k> or ~x<k> with optional ^e.
  // Example: -3/2*x2*~x3^2 + 1
  static Polynomial parse(const std::string& text);
  std::string to_string() const;

 private:
  Terms terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) {
  return p.scale(c);
}

// The monomial that evaluates to 1 exactly on alpha and to 0 on every other
// Boolean assignment of alpha's domain: prod_{alpha(v)=1} v * prod_{alpha(v)=0} ~v.
Monomial indicator(const Assignment& alpha);

// Twin-free indicator polynomial of a partial assignment:
// Ind(rho) = prod_{rho(v)=1} v * prod_{rho(v)=0} (1 - v); Ind(empty) = 1.
Polynomial ind_rho(const Assignment& rho);

}  // namespace qalg
