#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qalg/cert.hpp"
#include "qalg/game.hpp"
#include "qalg/poly.hpp"
#include "qalg/qbf.hpp"

namespace qalg {

// Polynomial-threshold countermodel: u plays (1 - sign(p_u)) / 2, with the
// convention sign(0) = +1. Each p_u mentions only variables left of u.
struct PtfCountermodel {
  std::map<VarId, Polynomial> thresholds;

  // Reported PTF cost: total monomials and max total degree of the p_u.
  std::size_t size() const;
  int degree() const;

  // The played value of u under the partial assignment of earlier variables.
  bool play(VarId u, const Assignment& alpha) const;
};

// p_u := q_u of an accepted certificate. Throws NotVerified-style errors by
// re-running verify first.
PtfCountermodel extract(const Qbf& qbf, const Certificate& cert);

struct CountermodelCheck {
  bool valid = false;
  std::optional<Assignment> counterexample;
};

// Plays the countermodel in prefix order against every assignment of the
// existential variables; valid iff every resulting total assignment
// falsifies the matrix.
CountermodelCheck validate_countermodel(const Qbf& qbf,
                                        const PtfCountermodel& model,
                                        int max_exist_vars = 24);

// Truth table of (1 - sign(p_u)) / 2 over all assignments of the variables
// left of u, indexed like EvalStrategy tables.
std::vector<bool> ptf_truth_table(const Qbf& qbf, const PtfCountermodel& model,
                                  VarId u, int max_left_vars = 24);

}  // namespace qalg
