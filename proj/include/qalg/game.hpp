#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qalg/cert.hpp"
#include "qalg/poly.hpp"
#include "qalg/qbf.hpp"

namespace qalg {

// Universal score-game strategy: one preference polynomial s_u per
// universal variable, over variables strictly left of u (twins included).
struct ScoreStrategy {
  std::map<VarId, Polynomial> scores;

  std::size_t monomial_count() const;
  int qdeg(const Prefix& prefix) const;
  ScoreStrategy restricted(VarId v, bool b) const;
};

// Universal evaluation-game strategy: per universal u a total decision
// table over the assignments of all variables left of u. Entry index: the
// i-th prefix variable contributes bit i (earliest variable = least
// significant bit).
struct EvalStrategy {
  std::map<VarId, std::vector<bool>> tables;
};

// Throws SideConditionViolated if some s_u mentions a variable not strictly
// left of u, or is keyed by a non-universal variable.
void validate_strategy(const Qbf& qbf, const ScoreStrategy& sigma);

// sum_u s_u(alpha) * (2 alpha(u) - 1).
Rational total_score(const ScoreStrategy& sigma, const Assignment& alpha);

struct WinCheck {
  bool winning = false;
  std::optional<Assignment> counterexample;
};

// The existential player controls every value (universal ones included,
// after seeing the scores): the strategy wins iff every total assignment
// either falsifies the matrix or meets the variant condition
// (variant 1: score > 0, variant 2: score == 1).
WinCheck check_winning(const Qbf& qbf, const ScoreStrategy& sigma, int variant,
                       int max_vars = 24);

// True iff every existential play against tau falsifies the matrix.
bool eval_strategy_wins(const Qbf& qbf, const EvalStrategy& tau);

// Adaptive score rule of the evaluation-to-score compilation: maintains the
// symbolic running score S and sets s_u = (1 - 2 T_u)(1 - S), where T_u
// interpolates tau_u by indicator monomials. Output wins variant 2.
ScoreStrategy strategy_from_eval(const Qbf& qbf, const EvalStrategy& tau);

// Winning variant-2 strategy -> QNS certificate with q_u = s_u and
// multipliers from the ideal decomposition; qsize equals the strategy size.
Certificate compile_v2_to_qns(const Qbf& qbf, const ScoreStrategy& sigma);

// Winning variant-1 strategy -> QSA certificate: c = half the minimum score
// over satisfying assignments, q_u = s_u / c, remainder
// sum_{alpha |= phi} (score(alpha)/c - 1) chi_alpha. With no satisfying
// assignment the compile degenerates to the plain ideal decomposition with
// remainder 0. Set emit_qsos to chain qsa_to_qsos.
Certificate compile_v1_to_qsa(const Qbf& qbf, const ScoreStrategy& sigma,
                              bool emit_qsos = false, int max_vars = 24);

// Completeness construction: prunes the assignment tree along tau, labels
// leaves with falsified clauses, and assembles the node identities into a
// QNS certificate over the twin encoding.
Certificate complete_from_countermodel(const Qbf& qbf, const EvalStrategy& tau);

// Lemma-style strategy combination: sigma1 wins phi|_{x=1}, sigma0 wins
// phi|_{x=0}; the result s_u = x * s_u^1 + (d/c) * s_u^0 wins phi, where
// c = max |score of sigma0| + 1 over all assignments and d = the smallest
// strictly positive score of sigma1 (1 if none).
ScoreStrategy combine(const Qbf& qbf, VarId x, const ScoreStrategy& sigma1,
                      const ScoreStrategy& sigma0, int max_vars = 24);

// Degree reduction: while more than the hypothesis bound of monomials of
// existential degree > d remain, restrict on a majority literal and merge
// the two recursive strategies with combine. Returns a winning strategy of
// qdeg <= d + b when the hypothesis holds.
ScoreStrategy qdeg_reduce(const Qbf& qbf, const ScoreStrategy& sigma, int d,
                          int b, int max_vars = 24);

// Solves the evaluation game and tabulates one winning universal strategy;
// requires the QBF to be false.
EvalStrategy countermodel_from_qbf(const Qbf& qbf, int max_vars = 24);

// Strategy file format: lines "u <var> : <poly>", '#' comments.
ScoreStrategy parse_strategy(const std::string& text);
ScoreStrategy read_strategy_file(const std::string& path);
std::string write_strategy(const ScoreStrategy& sigma);

// Decision-table file format: lines "u <var> : <bits>" with 2^k bits for k
// variables left of u, entry i = value at the assignment encoded by i.
EvalStrategy parse_eval_strategy(const std::string& text);
EvalStrategy read_eval_strategy_file(const std::string& path);
std::string write_eval_strategy(const EvalStrategy& tau);

}  // namespace qalg
