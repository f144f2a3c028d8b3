#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qalg/ideal.hpp"
#include "qalg/poly.hpp"
#include "qalg/qbf.hpp"

namespace qalg {

enum class System { kQNS, kQSA, kQSOS };

std::string system_name(System s);
System parse_system(const std::string& name);

// The q_p / q_u / q bundle of a Q-NS, Q-SA or Q-SOS refutation. The trailing
// "+ 1" of the defining identity is implicit and belongs to the verifier.
// The remainder is used by QSA (nonnegative coefficients); the squares list
// represents q = sum s^2 for QSOS; QNS uses neither.
struct Certificate {
  System system = System::kQNS;
  Multipliers multipliers;                // q_p, keyed by axiom
  std::map<VarId, Polynomial> universal;  // q_u
  Polynomial remainder;
  std::vector<Polynomial> squares;

  // q as a single polynomial (zero / remainder / expanded sum of squares).
  Polynomial expanded_q() const;
};

struct Measures {
  std::size_t size = 0;   // monomials, with repetition, over q_p, q_u, q
  int degree = 0;         // max degree over q_p*p, q_u*(1-2u), q
  std::size_t qsize = 0;  // monomials over the q_u only
  int qdeg = 0;           // max existential occurrences per q_u monomial
};

// Existential degree of one monomial: occurrences of existentially
// quantified base variables, twins included. Exponents count with
// multiplicity when with_multiplicity is set (the measure's default);
// the distinct-variable count is exposed for comparison.
int existential_occurrences(const Monomial& m, const Prefix& prefix,
                            bool with_multiplicity = true);
int existential_qdeg(const Polynomial& p, const Prefix& prefix,
                     bool with_multiplicity = true);

// Checks the algebraic identity sum q_p p + sum q_u (1-2u) + q + 1 = 0
// symbolically, the left-of side condition for every q_u, and the remainder
// shape of the system. Returns the Def-style measures on success.
Measures verify(const Qbf& qbf, const Certificate& cert);

// Restriction of an accepted certificate by an existential variable;
// multipliers are re-keyed to the restricted matrix and the result verifies
// against restrict_qbf(qbf, x, b).
Certificate restrict_certificate(const Qbf& qbf, const Certificate& cert,
                                 VarId x, bool b);

// Positive remainder terms become (at most four) squares via variable
// lifting through the Boolean axioms; q_u unchanged, so qsize and qdeg are
// preserved exactly.
Certificate qsa_to_qsos(const Certificate& cert);

// The expanded q is rewritten pointwise as sum_alpha q(alpha) chi_alpha;
// the difference is absorbed into the multipliers. Exponential in the
// variable count; capped.
Certificate qsos_to_qsa(const Qbf& qbf, const Certificate& cert,
                        int max_vars = 20);

// Four positive integers (possibly zero entries dropped by the caller) with
// s1^2+s2^2+s3^2+s4^2 = n, by bounded search.
std::vector<Integer> four_squares(const Integer& n);

// Certificate file format: header "qcert <QNS|QSA|QSOS>", then lines
// "p clause <j> : <poly>", "p bool <v> : <poly>", "p twin <v> : <poly>",
// "u <var> : <poly>", "r : <poly>", "s : <poly>"; '#' starts a comment.
Certificate parse_certificate(const std::string& text);
Certificate read_certificate_file(const std::string& path);
std::string write_certificate(const Certificate& cert);

}  // namespace qalg
