#pragma once

#include <map>
#include <optional>
#include <utility>

#include "qalg/cert.hpp"
#include "qalg/qbf.hpp"

namespace qalg {

// Degree-bounded refutation search. Multiplier templates range over the
// multilinear monomials in V and twin(V) (the Boolean axioms make higher
// exponents redundant at mildly larger degree); q_u templates additionally
// respect the left-of side condition and the qdeg cap.
struct SearchBudget {
  int degree = 2;  // max total degree of the identity
  int qdeg = -1;   // cap on existential occurrences per q_u monomial; -1 = off
  int max_vars = 16;
  std::map<AxiomId, int> axiom_degree_caps;  // optional per-axiom caps
};

// Infeasibility is relative to the template at this budget, never a claim
// about larger budgets.
std::optional<Certificate> ns_search(const Qbf& qbf, const SearchBudget& budget);
std::optional<Certificate> sa_search(const Qbf& qbf, const SearchBudget& budget);

// Increasing sweep over the qdeg cap at fixed degree; returns the first
// feasible cap with its witness.
std::optional<std::pair<int, Certificate>> min_qdeg(const Qbf& qbf,
                                                    System system,
                                                    const SearchBudget& budget);

// Cardinality sweep: smallest number of q_u template monomials that keeps
// the system feasible, by subset enumeration. Desk scale only; throws
// TooLarge when the candidate set exceeds max_candidates.
std::optional<std::pair<int, Certificate>> min_qsize(
    const Qbf& qbf, System system, const SearchBudget& budget,
    int max_candidates = 16);

}  // namespace qalg
