#pragma once

#include <map>

#include "qalg/poly.hpp"
#include "qalg/qbf.hpp"

namespace qalg {

using Multipliers = std::map<AxiomId, Polynomial>;

// Expresses r as sum_p q_p * p over enc(phi): clause monomials, Boolean
// axioms v^2 - v and twin axioms v + ~v - 1. Requires r to vanish on every
// twin-consistent Boolean assignment satisfying phi; throws NotInIdeal with
// a witness otherwise.
//
// This routine is exponential in the prefix length by design; it is the
// desk-scale oracle the rest of the toolkit leans on.
//
// check_precondition runs an eager sweep over all assignments before the
// decomposition; self_check re-expands the result and asserts symbolic
// equality with r.
Multipliers express_in_ideal(const Polynomial& r, const Qbf& qbf,
                             bool check_precondition = false,
                             bool self_check = true);

// sum over ids of multiplier * axiom_poly(qbf, id).
Polynomial expand_multipliers(const Multipliers& m, const Qbf& qbf);

}  // namespace qalg
