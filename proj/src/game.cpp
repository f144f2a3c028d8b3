#include "qalg/game.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qalg/detail/mask_eval.hpp"
#include "qalg/errors.hpp"

namespace qalg {

namespace {

Polynomial one_minus_2u(VarId u) {
  Polynomial p = Polynomial::one();
  p.add_term(Monomial::of(base_var(u)), Rational(-2));
  return p;
}

Polynomial two_u_minus_1(VarId u) {
  Polynomial p(Monomial::of(base_var(u)), Rational(2));
  p.add_term(Monomial::one(), Rational(-1));
  return p;
}

}  // namespace

std::size_t ScoreStrategy::monomial_count() const {
  std::size_t count = 0;
  for (const auto& [u, s] : scores) count += s.monomial_count();
  return count;
}

int ScoreStrategy::qdeg(const Prefix& prefix) const {
  int result = 0;
  for (const auto& [u, s] : scores) {
    result = std::max(result, existential_qdeg(s, prefix));
  }
  return result;
}

ScoreStrategy ScoreStrategy::restricted(VarId v, bool b) const {
  ScoreStrategy result;
  for (const auto& [u, s] : scores) {
    Polynomial r = s.restrict(v, b);
    if (!r.is_zero()) result.scores[u] = r;
  }
  return result;
}

void validate_strategy(const Qbf& qbf, const ScoreStrategy& sigma) {
  for (const auto& [u, s] : sigma.scores) {
    if (!qbf.prefix.contains(u) || !qbf.prefix.is_universal(u)) {
      throw SideConditionViolated(u, u,
                                  "strategy key x" + std::to_string(u) +
                                      " is not a universal variable");
    }
    for (const ExtVar& v : s.vars()) {
      if (!qbf.prefix.contains(v.base()) || !qbf.prefix.left_of(v.base(), u)) {
        throw SideConditionViolated(
            u, v.base(),
            "s_u for x" + std::to_string(u) + " mentions x" +
                std::to_string(v.base()) + ", which is not strictly left of it");
      }
    }
  }
}

Rational total_score(const ScoreStrategy& sigma, const Assignment& alpha) {
  Rational total(0);
  for (const auto& [u, s] : sigma.scores) {
    auto it = alpha.find(u);
    if (it == alpha.end()) {
      throw UnassignedVariable("universal variable x" + std::to_string(u) +
                               " has no value");
    }
    Rational value = s.evaluate(alpha);
    total += it->second ? value : -value;
  }
  return total;
}

WinCheck check_winning(const Qbf& qbf, const ScoreStrategy& sigma, int variant,
                       int max_vars) {
  if (variant != 1 && variant != 2) throw Error("variant must be 1 or 2");
  validate_strategy(qbf, sigma);
  if (qbf.prefix.size() > static_cast<std::size_t>(max_vars)) {
    throw TooLarge("winning check capped at " + std::to_string(max_vars) +
                   " variables");
  }
  detail::MaskEvaluator ev(qbf.prefix);
  std::vector<detail::MaskEvaluator::ClauseMask> clauses;
  clauses.reserve(qbf.clauses.size());
  for (const Clause& c : qbf.clauses) clauses.push_back(ev.compile(c));
  std::vector<std::pair<std::uint64_t, detail::MaskEvaluator::Poly>> scores;
  for (const auto& [u, s] : sigma.scores) {
    scores.push_back({ev.bit(u), ev.compile(s)});
  }

  const std::uint64_t end = std::uint64_t{1} << ev.var_count();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    bool satisfied = true;
    for (const auto& c : clauses) {
      if (!detail::MaskEvaluator::satisfied(c, mask)) {
        satisfied = false;
        break;
      }
    }
    if (!satisfied) continue;
    Rational score(0);
    for (const auto& [bit, poly] : scores) {
      Rational value = poly.evaluate(mask);
      if (mask & bit) {
        score += value;
      } else {
        score -= value;
      }
    }
    bool win = variant == 1 ? score > 0 : score == 1;
    if (!win) {
      return WinCheck{false, ev.to_assignment(mask)};
    }
  }
  return WinCheck{true, std::nullopt};
}

namespace {

std::size_t table_index(const Qbf& qbf, std::size_t position,
                        const Assignment& alpha) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < position; ++i) {
    VarId v = qbf.prefix.entries()[i].second;
    if (alpha.at(v)) index |= std::size_t{1} << i;
  }
  return index;
}

const std::vector<bool>& strategy_table(const Qbf& qbf, const EvalStrategy& tau,
                                        VarId u) {
  auto it = tau.tables.find(u);
  if (it == tau.tables.end()) {
    throw NotWinningEval("no decision table for universal variable x" +
                         std::to_string(u));
  }
  std::size_t expected = std::size_t{1} << qbf.prefix.position(u);
  if (it->second.size() != expected) {
    throw NotWinningEval("decision table for x" + std::to_string(u) +
                         " has wrong size");
  }
  return it->second;
}

// Walks every existential play against tau; true iff all of them falsify
// the matrix.
bool eval_wins_rec(const Qbf& qbf, const EvalStrategy& tau, std::size_t pos,
                   Assignment& alpha) {
  bool any_falsified = false;
  bool all_decided_satisfied = true;
  for (const Clause& c : qbf.clauses) {
    bool satisfied = false;
    bool undecided = false;
    for (const Literal& l : c.literals()) {
      auto it = alpha.find(l.var);
      if (it == alpha.end()) {
        undecided = true;
      } else if (it->second != l.negated) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) {
      if (!undecided) {
        any_falsified = true;
        break;
      }
      all_decided_satisfied = false;
    }
  }
  if (any_falsified) return true;
  if (all_decided_satisfied) return false;
  if (pos == qbf.prefix.size()) return false;

  auto [q, v] = qbf.prefix.entries()[pos];
  if (q == Quantifier::kForall) {
    bool value = strategy_table(qbf, tau, v)[table_index(qbf, pos, alpha)];
    alpha[v] = value;
    bool result = eval_wins_rec(qbf, tau, pos + 1, alpha);
    alpha.erase(v);
    return result;
  }
  alpha[v] = false;
  bool win = eval_wins_rec(qbf, tau, pos + 1, alpha);
  if (win) {
    alpha[v] = true;
    win = eval_wins_rec(qbf, tau, pos + 1, alpha);
  }
  alpha.erase(v);
  return win;
}

}  // namespace

bool eval_strategy_wins(const Qbf& qbf, const EvalStrategy& tau) {
  Assignment alpha;
  return eval_wins_rec(qbf, tau, 0, alpha);
}

ScoreStrategy strategy_from_eval(const Qbf& qbf, const EvalStrategy& tau) {
  if (!eval_strategy_wins(qbf, tau)) {
    throw NotWinningEval("the decision tables do not win the evaluation game");
  }
  ScoreStrategy sigma;
  Polynomial running_score;  // symbolic S over the variables played so far
  for (std::size_t pos = 0; pos < qbf.prefix.size(); ++pos) {
    auto [q, v] = qbf.prefix.entries()[pos];
    if (q != Quantifier::kForall) continue;
    const std::vector<bool>& table = strategy_table(qbf, tau, v);
    // T_u = sum of indicator monomials of the table's 1-entries.
    Polynomial interpolant;
    for (std::size_t index = 0; index < table.size(); ++index) {
      if (!table[index]) continue;
      Assignment beta;
      for (std::size_t i = 0; i < pos; ++i) {
        beta[qbf.prefix.entries()[i].second] = (index >> i) & 1;
      }
      interpolant.add_term(indicator(beta), Rational(1));
    }
    Polynomial s_u = (Polynomial::one() - interpolant.scale(Rational(2))) *
                     (Polynomial::one() - running_score);
    sigma.scores[v] = s_u;
    running_score += s_u * two_u_minus_1(v);
  }
  return sigma;
}

Certificate compile_v2_to_qns(const Qbf& qbf, const ScoreStrategy& sigma) {
  WinCheck check = check_winning(qbf, sigma, 2);
  if (!check.winning) {
    throw NotWinning("strategy does not win variant 2 of the score game");
  }
  Polynomial r = Polynomial::one();
  for (const auto& [u, s] : sigma.scores) r += s * one_minus_2u(u);

  Certificate cert;
  cert.system = System::kQNS;
  cert.universal = sigma.scores;
  cert.multipliers = express_in_ideal(-r, qbf);
  return cert;
}

Certificate compile_v1_to_qsa(const Qbf& qbf, const ScoreStrategy& sigma,
                              bool emit_qsos, int max_vars) {
  WinCheck check = check_winning(qbf, sigma, 1, max_vars);
  if (!check.winning) {
    throw NotWinning("strategy does not win variant 1 of the score game");
  }

  detail::MaskEvaluator ev(qbf.prefix);
  std::vector<detail::MaskEvaluator::ClauseMask> clauses;
  for (const Clause& c : qbf.clauses) clauses.push_back(ev.compile(c));
  std::vector<std::pair<std::uint64_t, detail::MaskEvaluator::Poly>> scores;
  for (const auto& [u, s] : sigma.scores) {
    scores.push_back({ev.bit(u), ev.compile(s)});
  }

  // Collect the scores of all satisfying assignments.
  std::vector<std::pair<std::uint64_t, Rational>> satisfying;
  const std::uint64_t end = std::uint64_t{1} << ev.var_count();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    bool satisfied = true;
    for (const auto& c : clauses) {
      if (!detail::MaskEvaluator::satisfied(c, mask)) {
        satisfied = false;
        break;
      }
    }
    if (!satisfied) continue;
    Rational score(0);
    for (const auto& [bit, poly] : scores) {
      Rational value = poly.evaluate(mask);
      if (mask & bit) {
        score += value;
      } else {
        score -= value;
      }
    }
    satisfying.push_back({mask, std::move(score)});
  }

  Certificate cert;
  cert.system = System::kQSA;
  if (satisfying.empty()) {
    // Propositionally unsatisfiable matrix: remainder 0, no scaling needed.
    cert.universal = sigma.scores;
  } else {
    Rational minimum = satisfying.front().second;
    for (const auto& [mask, score] : satisfying) {
      minimum = std::min(minimum, score);
    }
    Rational c = minimum / 2;
    for (const auto& [u, s] : sigma.scores) {
      cert.universal[u] = s.scale(1 / c);
    }
    for (const auto& [mask, score] : satisfying) {
      cert.remainder.add_term(indicator(ev.to_assignment(mask)), score / c - 1);
    }
  }

  Polynomial r = Polynomial::one() + cert.remainder;
  for (const auto& [u, s] : cert.universal) r += s * one_minus_2u(u);
  cert.multipliers = express_in_ideal(-r, qbf);

  if (emit_qsos) return qsa_to_qsos(cert);
  return cert;
}

namespace {

// Node expression of the completeness construction:
//   Ind(alpha_v) = sum_C f_C * enc'(C) + sum_u g_u * (1 - 2u)
// over the twin-free clause encodings enc'(C).
struct NodeExpr {
  std::map<int, Polynomial> clause_mult;
  std::map<VarId, Polynomial> uni_mult;

  void add(const NodeExpr& other) {
    for (const auto& [j, f] : other.clause_mult) clause_mult[j] += f;
    for (const auto& [u, g] : other.uni_mult) uni_mult[u] += g;
  }
  void scale(const Rational& c) {
    for (auto& [j, f] : clause_mult) f = f.scale(c);
    for (auto& [u, g] : uni_mult) g = g.scale(c);
  }
};

// True iff every literal of c is assigned and false under alpha.
bool clause_falsified(const Clause& c, const Assignment& alpha) {
  for (const Literal& l : c.literals()) {
    auto it = alpha.find(l.var);
    if (it == alpha.end() || it->second == !l.negated) return false;
  }
  return true;
}

struct CompletenessBuilder {
  const Qbf& qbf;
  const EvalStrategy& tau;

  NodeExpr build(std::size_t pos, Assignment& alpha) {
    for (std::size_t j = 0; j < qbf.clauses.size(); ++j) {
      if (clause_falsified(qbf.clauses[j], alpha)) {
        // Leaf: Ind(alpha) is enc'(C_j) times the indicator of the other
        // assigned variables.
        Assignment rest = alpha;
        for (const Literal& l : qbf.clauses[j].literals()) rest.erase(l.var);
        NodeExpr expr;
        expr.clause_mult[static_cast<int>(j)] = ind_rho(rest);
        return expr;
      }
    }
    if (pos == qbf.prefix.size()) {
      throw NotWinningEval("a complete play satisfies the matrix");
    }
    auto [q, v] = qbf.prefix.entries()[pos];
    if (q == Quantifier::kExists) {
      alpha[v] = false;
      NodeExpr expr = build(pos + 1, alpha);
      alpha[v] = true;
      expr.add(build(pos + 1, alpha));
      alpha.erase(v);
      return expr;
    }
    bool b = strategy_table(qbf, tau, v)[table_index(qbf, pos, alpha)];
    Polynomial ind_here = ind_rho(alpha);
    alpha[v] = b;
    NodeExpr expr = build(pos + 1, alpha);
    alpha.erase(v);
    // Ind(alpha) = 2 Ind(alpha,u=b) -/+ Ind(alpha)(1-2u): the child term is
    // doubled and the (1-2u) multiplier picks up -Ind for b=0, +Ind for b=1.
    expr.scale(Rational(2));
    expr.uni_mult[v] += b ? ind_here : -ind_here;
    return expr;
  }
};

}  // namespace

Certificate complete_from_countermodel(const Qbf& qbf, const EvalStrategy& tau) {
  if (!eval_strategy_wins(qbf, tau)) {
    throw NotWinningEval("the decision tables do not win the evaluation game");
  }
  CompletenessBuilder builder{qbf, tau};
  Assignment alpha;
  NodeExpr root = builder.build(0, alpha);

  // Rewrite the twin-free encodings enc'(C) = prod_{v in P}(1-v) prod_N v
  // into M(C) plus twin-axiom multiples, distributing (1-v) = ~v - (v+~v-1)
  // left to right.
  Certificate cert;
  cert.system = System::kQNS;
  for (const auto& [j, f] : root.clause_mult) {
    if (f.is_zero()) continue;
    const Clause& clause = qbf.clauses[j];
    std::vector<VarId> positives;
    Monomial negatives;
    for (const Literal& l : clause.literals()) {
      if (l.negated) {
        negatives = negatives.times(base_var(l.var));
      } else {
        positives.push_back(l.var);
      }
    }
    cert.multipliers[AxiomId::clause(j)] -= f;
    for (std::size_t i = 0; i < positives.size(); ++i) {
      // accumulated twins to the left, untouched (1-v) factors to the right
      Monomial twins_left;
      for (std::size_t k = 0; k < i; ++k) {
        twins_left = twins_left.times(twin_var(positives[k]));
      }
      Polynomial tail = Polynomial(negatives, Rational(1)).times(twins_left);
      for (std::size_t k = i + 1; k < positives.size(); ++k) {
        tail = tail * (Polynomial::one() - Polynomial::variable(base_var(positives[k])));
      }
      cert.multipliers[AxiomId::twin_axiom(positives[i])] += f * tail;
    }
  }
  for (const auto& [u, g] : root.uni_mult) {
    Polynomial negated = -g;
    if (!negated.is_zero()) cert.universal[u] = negated;
  }
  for (auto it = cert.multipliers.begin(); it != cert.multipliers.end();) {
    it = it->second.is_zero() ? cert.multipliers.erase(it) : std::next(it);
  }
  return cert;
}

namespace {

struct ScoreStats {
  Rational min_positive;  // smallest strictly positive score, or 1
  Rational max_abs;       // largest |score|
};

ScoreStats score_stats(const Qbf& qbf, const ScoreStrategy& sigma) {
  detail::MaskEvaluator ev(qbf.prefix);
  std::vector<std::pair<std::uint64_t, detail::MaskEvaluator::Poly>> scores;
  for (const auto& [u, s] : sigma.scores) {
    scores.push_back({ev.bit(u), ev.compile(s)});
  }
  ScoreStats stats{Rational(0), Rational(0)};
  bool saw_positive = false;
  const std::uint64_t end = std::uint64_t{1} << ev.var_count();
  for (std::uint64_t mask = 0; mask < end; ++mask) {
    Rational score(0);
    for (const auto& [bit, poly] : scores) {
      Rational value = poly.evaluate(mask);
      if (mask & bit) {
        score += value;
      } else {
        score -= value;
      }
    }
    Rational magnitude = score < 0 ? Rational(-score) : score;
    stats.max_abs = std::max(stats.max_abs, magnitude);
    if (score > 0 && (!saw_positive || score < stats.min_positive)) {
      stats.min_positive = score;
      saw_positive = true;
    }
  }
  if (!saw_positive) stats.min_positive = Rational(1);
  return stats;
}

// gate_value selects which restriction's strategy is multiplied by the gate
// polynomial (x for gate_value=1, 1-x otherwise); the other strategy is
// scaled by d/c.
ScoreStrategy combine_oriented(const Qbf& qbf, VarId x, bool gate_value,
                               const ScoreStrategy& gated,
                               const ScoreStrategy& other, int max_vars) {
  if (!qbf.prefix.contains(x) || !qbf.prefix.is_existential(x)) {
    throw NotExistential("x" + std::to_string(x) +
                         " is not an existential prefix variable");
  }
  Qbf gated_qbf = restrict_qbf(qbf, x, gate_value);
  Qbf other_qbf = restrict_qbf(qbf, x, !gate_value);
  WinCheck gated_check = check_winning(gated_qbf, gated, 1, max_vars);
  if (!gated_check.winning) {
    throw NotWinning("strategy for the x=" + std::to_string(gate_value ? 1 : 0) +
                     " restriction does not win variant 1");
  }
  WinCheck other_check = check_winning(other_qbf, other, 1, max_vars);
  if (!other_check.winning) {
    throw NotWinning("strategy for the x=" + std::to_string(gate_value ? 0 : 1) +
                     " restriction does not win variant 1");
  }

  Rational d = score_stats(gated_qbf, gated).min_positive;
  Rational c = score_stats(other_qbf, other).max_abs + 1;
  Rational ratio = d / c;

  Polynomial gate = gate_value
                        ? Polynomial::variable(base_var(x))
                        : Polynomial::one() - Polynomial::variable(base_var(x));

  ScoreStrategy result;
  for (VarId u : qbf.prefix.universals()) {
    Polynomial s;
    auto git = gated.scores.find(u);
    if (git != gated.scores.end() && !git->second.is_zero()) {
      if (!qbf.prefix.left_of(x, u)) {
        // The gated side's preference would have to read x before it is
        // played; the combination formula has no valid counterpart here.
        throw SideConditionViolated(
            u, x,
            "combine: restricted variable x" + std::to_string(x) +
                " is not left of universal x" + std::to_string(u));
      }
      s += gate * git->second;
    }
    auto oit = other.scores.find(u);
    if (oit != other.scores.end()) s += oit->second.scale(ratio);
    if (!s.is_zero()) result.scores[u] = s;
  }
  return result;
}

}  // namespace

ScoreStrategy combine(const Qbf& qbf, VarId x, const ScoreStrategy& sigma1,
                      const ScoreStrategy& sigma0, int max_vars) {
  return combine_oriented(qbf, x, true, sigma1, sigma0, max_vars);
}

ScoreStrategy qdeg_reduce(const Qbf& qbf, const ScoreStrategy& sigma, int d,
                          int b, int max_vars) {
  if (d < 0 || b < 0) throw Error("qdeg_reduce needs d, b >= 0");
  WinCheck check = check_winning(qbf, sigma, 1, max_vars);
  if (!check.winning) {
    throw NotWinning("input strategy does not win variant 1");
  }

  // High-degree monomials: existential degree > d, over all the s_u.
  std::vector<Monomial> high;
  for (const auto& [u, s] : sigma.scores) {
    for (const auto& [m, c] : s.terms()) {
      if (existential_occurrences(m, qbf.prefix) > d) high.push_back(m);
    }
  }
  if (high.empty()) return sigma;

  const long n = static_cast<long>(qbf.prefix.existentials().size());
  const long k = static_cast<long>(high.size());
  // Hypothesis: k < (1 - d/2n)^{-b}, i.e. k (2n-d)^b < (2n)^b, exactly.
  if (d >= 2 * n) {
    throw HypothesisViolated("existential degree bound d=" + std::to_string(d) +
                             " is not below twice the existential count");
  }
  Integer lhs = Integer(k);
  Integer rhs = 1;
  for (int i = 0; i < b; ++i) {
    lhs *= Integer(2 * n - d);
    rhs *= Integer(2 * n);
  }
  if (lhs >= rhs) {
    throw HypothesisViolated(
        "too many monomials of existential degree > " + std::to_string(d) +
        ": " + std::to_string(k) + " present, hypothesis bound not met");
  }

  // Majority literal among existential occurrences; falsifying it kills
  // every high-degree monomial containing it.
  std::map<ExtVar, long> counts;
  for (const Monomial& m : high) {
    for (const auto& [v, e] : m.factors()) {
      if (qbf.prefix.is_existential(v.base())) counts[v]++;
    }
  }
  ExtVar best;
  long best_count = -1;
  for (const auto& [v, count] : counts) {
    bool better = count > best_count ||
                  (count == best_count &&
                   (v.base() < best.base() ||
                    (v.base() == best.base() && !v.is_twin() && best.is_twin())));
    if (better) {
      best = v;
      best_count = count;
    }
  }

  VarId x = best.base();
  bool kill_value = best.is_twin();  // plain factors die at 0, twins at 1

  Qbf kill_qbf = restrict_qbf(qbf, x, kill_value);
  Qbf keep_qbf = restrict_qbf(qbf, x, !kill_value);
  ScoreStrategy kill_sigma =
      qdeg_reduce(kill_qbf, sigma.restricted(x, kill_value), d, b - 1, max_vars);
  ScoreStrategy keep_sigma =
      qdeg_reduce(keep_qbf, sigma.restricted(x, !kill_value), d, b, max_vars);
  return combine_oriented(qbf, x, kill_value, kill_sigma, keep_sigma, max_vars);
}

namespace {

bool game_value(const Qbf& qbf, std::size_t pos, Assignment& alpha);

bool game_value(const Qbf& qbf, std::size_t pos, Assignment& alpha) {
  bool all_satisfied = true;
  for (const Clause& c : qbf.clauses) {
    bool satisfied = false;
    bool undecided = false;
    for (const Literal& l : c.literals()) {
      auto it = alpha.find(l.var);
      if (it == alpha.end()) {
        undecided = true;
      } else if (it->second != l.negated) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) {
      if (!undecided) return false;
      all_satisfied = false;
    }
  }
  if (all_satisfied) return true;
  if (pos == qbf.prefix.size()) return true;

  auto [q, v] = qbf.prefix.entries()[pos];
  alpha[v] = false;
  bool result = game_value(qbf, pos + 1, alpha);
  if ((q == Quantifier::kExists && !result) ||
      (q == Quantifier::kForall && result)) {
    alpha[v] = true;
    result = game_value(qbf, pos + 1, alpha);
  }
  alpha.erase(v);
  return result;
}

}  // namespace

EvalStrategy countermodel_from_qbf(const Qbf& qbf, int max_vars) {
  if (qbf.prefix.size() > static_cast<std::size_t>(max_vars)) {
    throw TooLarge("countermodel extraction capped at " +
                   std::to_string(max_vars) + " variables");
  }
  if (evaluate_qbf(qbf, max_vars)) {
    throw NotWinningEval("the QBF is true; no countermodel exists");
  }
  EvalStrategy tau;
  for (std::size_t pos = 0; pos < qbf.prefix.size(); ++pos) {
    auto [q, u] = qbf.prefix.entries()[pos];
    if (q != Quantifier::kForall) continue;
    std::vector<bool>& table = tau.tables[u];
    table.resize(std::size_t{1} << pos);
    for (std::size_t index = 0; index < table.size(); ++index) {
      Assignment alpha;
      for (std::size_t i = 0; i < pos; ++i) {
        alpha[qbf.prefix.entries()[i].second] = (index >> i) & 1;
      }
      alpha[u] = false;
      bool exists_wins_0 = game_value(qbf, pos + 1, alpha);
      if (!exists_wins_0) {
        table[index] = false;
        continue;
      }
      alpha[u] = true;
      bool exists_wins_1 = game_value(qbf, pos + 1, alpha);
      // Unreachable positions may be existential-winning either way; any
      // value keeps the strategy total.
      table[index] = !exists_wins_1;
    }
  }
  return tau;
}

ScoreStrategy parse_strategy(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  ScoreStrategy sigma;
  while (std::getline(in, raw)) {
    ++lineno;
    auto pos = raw.find('#');
    std::string line = pos == std::string::npos ? raw : raw.substr(0, pos);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "u") throw ParseError(lineno, 1, "expected 'u <var> : <poly>'");
    int v;
    std::string colon;
    if (!(ls >> v >> colon) || colon != ":") {
      throw ParseError(lineno, 1, "expected 'u <var> : <poly>'");
    }
    std::string rest;
    std::getline(ls, rest);
    sigma.scores[v] += Polynomial::parse(rest);
  }
  return sigma;
}

ScoreStrategy read_strategy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_strategy(buf.str());
}

std::string write_strategy(const ScoreStrategy& sigma) {
  std::ostringstream out;
  for (const auto& [u, s] : sigma.scores) {
    out << "u " << u << " : " << s.to_string() << "\n";
  }
  return out.str();
}

EvalStrategy parse_eval_strategy(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  EvalStrategy tau;
  while (std::getline(in, raw)) {
    ++lineno;
    auto pos = raw.find('#');
    std::string line = pos == std::string::npos ? raw : raw.substr(0, pos);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head != "u") throw ParseError(lineno, 1, "expected 'u <var> : <bits>'");
    int v;
    std::string colon, bits;
    if (!(ls >> v >> colon >> bits) || colon != ":") {
      throw ParseError(lineno, 1, "expected 'u <var> : <bits>'");
    }
    std::vector<bool> table;
    for (char c : bits) {
      if (c != '0' && c != '1') throw ParseError(lineno, 1, "table bits must be 0/1");
      table.push_back(c == '1');
    }
    tau.tables[v] = std::move(table);
  }
  return tau;
}

EvalStrategy read_eval_strategy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_eval_strategy(buf.str());
}

std::string write_eval_strategy(const EvalStrategy& tau) {
  std::ostringstream out;
  for (const auto& [u, table] : tau.tables) {
    out << "u " << u << " : ";
    for (bool b : table) out << (b ? '1' : '0');
    out << "\n";
  }
  return out.str();
}

}  // namespace qalg
