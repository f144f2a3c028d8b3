#include "qalg/proofs.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qalg/errors.hpp"

namespace qalg {

namespace {

Polynomial one_minus_2u(VarId u) {
  Polynomial p = Polynomial::one();
  p.add_term(Monomial::of(base_var(u)), Rational(-2));
  return p;
}

}  // namespace

// ---------------------------------------------------------------- QU-Res

TraceMeasures check_qures(const Qbf& qbf, const QuResProof& proof) {
  std::vector<Clause> derived;
  derived.reserve(proof.steps.size());
  TraceMeasures measures;
  measures.size = proof.steps.size();

  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const QuResStep& step = proof.steps[i];
    switch (step.kind) {
      case QuResStep::Kind::kAxiom: {
        if (step.clause_index < 0 ||
            static_cast<std::size_t>(step.clause_index) >= qbf.clauses.size()) {
          throw InvalidStep(i, "axiom clause index out of range");
        }
        derived.push_back(qbf.clauses[step.clause_index]);
        break;
      }
      case QuResStep::Kind::kResolve: {
        if (step.premise1 >= i || step.premise2 >= i) {
          throw InvalidStep(i, "premise index must refer to an earlier step");
        }
        const Clause& c = derived[step.premise1];
        const Clause& d = derived[step.premise2];
        VarId v = step.variable;
        const Clause* with_pos = nullptr;
        const Clause* with_neg = nullptr;
        if (c.contains(pos(v)) && d.contains(neg(v))) {
          with_pos = &c;
          with_neg = &d;
        } else if (c.contains(neg(v)) && d.contains(pos(v))) {
          with_pos = &d;
          with_neg = &c;
        } else {
          throw InvalidStep(i, "no pivot polarity pair on x" + std::to_string(v));
        }
        std::vector<Literal> lits;
        for (const Literal& l : with_pos->without_var(v).literals()) lits.push_back(l);
        for (const Literal& l : with_neg->without_var(v).literals()) lits.push_back(l);
        try {
          derived.push_back(Clause(std::move(lits)));
        } catch (const TautologyError&) {
          throw InvalidStep(i, "tautological resolvent");
        }
        break;
      }
      case QuResStep::Kind::kUnivReduce: {
        if (step.premise1 >= i) {
          throw InvalidStep(i, "premise index must refer to an earlier step");
        }
        VarId u = step.variable;
        if (!qbf.prefix.contains(u) || !qbf.prefix.is_universal(u)) {
          throw InvalidStep(i, "x" + std::to_string(u) + " is not universal");
        }
        const Clause& c = derived[step.premise1];
        if (!c.contains_var(u)) {
          throw InvalidStep(i, "premise has no literal on x" + std::to_string(u));
        }
        Clause reduced = c.without_var(u);
        for (const Literal& l : reduced.literals()) {
          if (!qbf.prefix.left_of(l.var, u)) {
            throw InvalidStep(i, "x" + std::to_string(l.var) +
                                     " is not left of the reduced variable");
          }
        }
        derived.push_back(reduced);
        ++measures.qsize;
        break;
      }
    }
  }
  if (derived.empty() || !derived.back().empty()) {
    throw InvalidStep(proof.steps.empty() ? 0 : proof.steps.size() - 1,
                      "final derived clause is not empty");
  }
  return measures;
}

// ---------------------------------------------------------------- Q-w-Res

Monomial literals_monomial(const std::vector<Literal>& literals) {
  Monomial m;
  for (const Literal& l : literals) {
    m = m.times(l.negated ? base_var(l.var) : twin_var(l.var));
  }
  return m;
}

std::vector<Literal> monomial_literals(const Monomial& m) {
  std::vector<Literal> lits;
  for (const auto& [v, e] : m.factors()) {
    for (int i = 0; i < e; ++i) {
      lits.push_back(v.is_twin() ? pos(v.base()) : neg(v.base()));
    }
  }
  return lits;
}

namespace {

void wres_apply(WResConfiguration& config, const Monomial& m, const Integer& w) {
  if (w == 0) return;
  auto [it, inserted] = config.emplace(m, w);
  if (!inserted) {
    it->second += w;
    if (it->second == 0) config.erase(it);
  }
}

void wres_step_deltas(const Qbf& qbf, const WResStep& step, std::size_t index,
                      WResConfiguration& config) {
  const Monomial base = literals_monomial(step.clause);
  switch (step.kind) {
    case WResStep::Kind::kAxiom: {
      Clause normalized(step.clause);
      bool found = false;
      for (const Clause& c : qbf.clauses) {
        if (c == normalized && normalized.size() == step.clause.size()) {
          found = true;
          break;
        }
      }
      if (!found) throw InvalidStep(index, "axiom clause is not a matrix clause");
      wres_apply(config, base, step.weight);
      break;
    }
    case WResStep::Kind::kSymCut: {
      if (!qbf.prefix.contains(step.variable)) {
        throw InvalidStep(index, "cut variable not in the prefix");
      }
      wres_apply(config, base.times(twin_var(step.variable)), -step.weight);
      wres_apply(config, base.times(base_var(step.variable)), -step.weight);
      wres_apply(config, base, step.weight);
      break;
    }
    case WResStep::Kind::kIdem: {
      if (!qbf.prefix.contains(step.variable)) {
        throw InvalidStep(index, "idempotency variable not in the prefix");
      }
      ExtVar f = step.negated ? base_var(step.variable) : twin_var(step.variable);
      wres_apply(config, base.times(Monomial::of(f, 2)), -step.weight);
      wres_apply(config, base.times(f), step.weight);
      break;
    }
    case WResStep::Kind::kUnivRed: {
      VarId u = step.variable;
      if (!qbf.prefix.contains(u) || !qbf.prefix.is_universal(u)) {
        throw InvalidStep(index, "x" + std::to_string(u) + " is not universal");
      }
      for (const Literal& l : step.clause) {
        if (!qbf.prefix.contains(l.var) || !qbf.prefix.left_of(l.var, u)) {
          throw InvalidStep(index, "clause variable x" + std::to_string(l.var) +
                                       " is not left of the reduced variable");
        }
      }
      ExtVar f = step.negated ? base_var(u) : twin_var(u);
      wres_apply(config, base.times(f), -2 * step.weight);
      wres_apply(config, base, step.weight);
      break;
    }
  }
}

}  // namespace

WResConfiguration replay_wres(const Qbf& qbf, const WResProof& proof) {
  WResConfiguration config;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    wres_step_deltas(qbf, proof.steps[i], i, config);
  }
  return config;
}

TraceMeasures check_wres(const Qbf& qbf, const WResProof& proof) {
  WResConfiguration config = replay_wres(qbf, proof);
  auto bottom = config.find(Monomial::one());
  if (bottom == config.end() || bottom->second <= 0) {
    throw FinalConfigViolation(
        "final configuration has no positive-weight empty clause");
  }
  for (const auto& [m, w] : config) {
    if (w < 0) {
      throw FinalConfigViolation("final configuration weight " + w.get_str() +
                                 " on a clause is negative");
    }
  }
  TraceMeasures measures;
  measures.size = proof.steps.size();
  for (const WResStep& s : proof.steps) {
    if (s.kind == WResStep::Kind::kUnivRed) ++measures.qsize;
  }
  return measures;
}

// ------------------------------------------------------------------ Q-PC

std::vector<Polynomial> replay_qpc(const Qbf& qbf, const QpcProof& proof,
                                   TraceMeasures* measures) {
  std::vector<Polynomial> derived;
  derived.reserve(proof.steps.size());
  TraceMeasures local;
  local.size = 0;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const QpcStep& step = proof.steps[i];
    switch (step.kind) {
      case QpcStep::Kind::kAxiom: {
        try {
          derived.push_back(axiom_poly(qbf, step.axiom));
        } catch (const InvalidAxiomId& e) {
          throw InvalidStep(i, e.what());
        }
        break;
      }
      case QpcStep::Kind::kLinComb: {
        if (step.premise1 >= i || step.premise2 >= i) {
          throw InvalidStep(i, "premise index must refer to an earlier step");
        }
        derived.push_back(derived[step.premise1].scale(step.a) +
                          derived[step.premise2].scale(step.b));
        break;
      }
      case QpcStep::Kind::kMul: {
        if (step.premise1 >= i) {
          throw InvalidStep(i, "premise index must refer to an earlier step");
        }
        if (!qbf.prefix.contains(step.mul_var.base())) {
          throw InvalidStep(i, "product variable not in the prefix");
        }
        derived.push_back(derived[step.premise1].times(Monomial::of(step.mul_var)));
        break;
      }
      case QpcStep::Kind::kScale: {
        if (step.premise1 >= i) {
          throw InvalidStep(i, "premise index must refer to an earlier step");
        }
        derived.push_back(derived[step.premise1].scale(step.a));
        break;
      }
      case QpcStep::Kind::kUnivRed: {
        if (step.premise1 >= i) {
          throw InvalidStep(i, "premise index must refer to an earlier step");
        }
        VarId u = step.red_var;
        if (!qbf.prefix.contains(u) || !qbf.prefix.is_universal(u)) {
          throw InvalidStep(i, "x" + std::to_string(u) + " is not universal");
        }
        const Polynomial& premise = derived[step.premise1];
        for (const ExtVar& v : premise.vars()) {
          if (v.base() == u) continue;
          if (!qbf.prefix.contains(v.base()) ||
              !qbf.prefix.left_of(v.base(), u)) {
            throw InvalidStep(i, "premise variable x" + std::to_string(v.base()) +
                                     " is not left of the reduced variable");
          }
        }
        local.qsize += premise.monomial_count();
        derived.push_back(premise.restrict(u, step.red_value));
        break;
      }
    }
    local.size += derived.back().monomial_count();
  }
  if (measures != nullptr) *measures = local;
  return derived;
}

TraceMeasures check_qpc(const Qbf& qbf, const QpcProof& proof) {
  TraceMeasures measures;
  std::vector<Polynomial> derived = replay_qpc(qbf, proof, &measures);
  if (derived.empty() || !(derived.back() == Polynomial::one())) {
    throw NotRefuted("final polynomial is not the constant 1");
  }
  return measures;
}

// ----------------------------------------------------------- translations

Certificate wres_to_qsa(const Qbf& qbf, const WResProof& proof) {
  check_wres(qbf, proof);

  Certificate cert;
  cert.system = System::kQSA;
  WResConfiguration config;
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const WResStep& step = proof.steps[i];
    const Monomial base = literals_monomial(step.clause);
    const Rational w(step.weight);
    switch (step.kind) {
      case WResStep::Kind::kAxiom: {
        Clause normalized(step.clause);
        int index = -1;
        for (std::size_t j = 0; j < qbf.clauses.size(); ++j) {
          if (qbf.clauses[j] == normalized) {
            index = static_cast<int>(j);
            break;
          }
        }
        cert.multipliers[AxiomId::clause(index)] += Polynomial(-w);
        break;
      }
      case WResStep::Kind::kIdem: {
        // w M(C)(f^2 - f); a twin factor rewrites through
        // ~x^2 - ~x = (x^2 - x) + (~x - x)(x + ~x - 1).
        Polynomial contribution(base, w);
        cert.multipliers[AxiomId::bool_axiom(step.variable)] += contribution;
        if (!step.negated) {
          Polynomial twin_diff = Polynomial::variable(twin_var(step.variable)) -
                                 Polynomial::variable(base_var(step.variable));
          cert.multipliers[AxiomId::twin_axiom(step.variable)] +=
              contribution * twin_diff;
        }
        break;
      }
      case WResStep::Kind::kSymCut: {
        cert.multipliers[AxiomId::twin_axiom(step.variable)] += Polynomial(base, w);
        break;
      }
      case WResStep::Kind::kUnivRed: {
        // 2w M(C u) - w M(C): for the negative literal this is
        // -w M(C)(1-2u); for the positive one +w M(C)(1-2u) plus the twin
        // correction 2w M(C)(u + ~u - 1).
        if (step.negated) {
          cert.universal[step.variable] += Polynomial(base, -w);
        } else {
          cert.universal[step.variable] += Polynomial(base, w);
          cert.multipliers[AxiomId::twin_axiom(step.variable)] +=
              Polynomial(base, 2 * w);
        }
        break;
      }
    }
    wres_step_deltas(qbf, step, i, config);
  }

  Rational bottom(config.at(Monomial::one()));
  for (const auto& [m, w] : config) {
    if (!m.is_one()) cert.remainder.add_term(m, Rational(w) / bottom);
  }
  for (auto& [id, q] : cert.multipliers) q = q.scale(1 / bottom);
  for (auto& [u, q] : cert.universal) q = q.scale(1 / bottom);
  for (auto it = cert.multipliers.begin(); it != cert.multipliers.end();) {
    it = it->second.is_zero() ? cert.multipliers.erase(it) : std::next(it);
  }
  for (auto it = cert.universal.begin(); it != cert.universal.end();) {
    it = it->second.is_zero() ? cert.universal.erase(it) : std::next(it);
  }

  verify(qbf, cert);
  return cert;
}

namespace {

// Accumulates the integer scaling of all step weights: weights are built as
// rationals and multiplied by the least common denominator at the end.
struct WeightedSteps {
  struct Pending {
    WResStep::Kind kind;
    std::vector<Literal> clause;
    VarId variable;
    bool negated;
    Rational weight;
  };
  std::vector<Pending> pending;

  void add(WResStep::Kind kind, std::vector<Literal> clause, VarId variable,
           bool negated, Rational weight) {
    pending.push_back(
        {kind, std::move(clause), variable, negated, std::move(weight)});
  }

  WResProof scaled() const {
    Integer denominator(1);
    for (const Pending& p : pending) {
      denominator = lcm(denominator, Integer(p.weight.get_den()));
    }
    WResProof proof;
    for (const Pending& p : pending) {
      Rational scaled = p.weight * Rational(denominator);
      WResStep step;
      step.kind = p.kind;
      step.clause = p.clause;
      step.variable = p.variable;
      step.negated = p.negated;
      step.weight = Integer(scaled.get_num());
      proof.steps.push_back(std::move(step));
    }
    return proof;
  }
};

}  // namespace

WResProof qsa_to_wres(const Qbf& qbf, const Certificate& cert) {
  if (cert.system != System::kQSA) {
    throw NotQSA("qsa_to_wres expects a QSA certificate");
  }
  verify(qbf, cert);

  // Normalize every clause multiplier to a scalar: a term a*m*M(C) with
  // support(m) inside support(M(C)) reassociates into a*M(C) plus Boolean
  // and twin axiom multiples; anything else has no counterpart among the
  // weighted-resolution rules.
  std::map<int, Rational> clause_scalars;
  std::map<VarId, Polynomial> bool_mult;
  std::map<VarId, Polynomial> twin_mult;
  std::map<VarId, Polynomial> universal = cert.universal;

  for (const auto& [id, q] : cert.multipliers) {
    switch (id.kind) {
      case AxiomId::Kind::kBool:
        bool_mult[id.value] += q;
        continue;
      case AxiomId::Kind::kTwin:
        twin_mult[id.value] += q;
        continue;
      case AxiomId::Kind::kClause:
        break;
    }
    const Monomial clause_support = clause_monomial(qbf.clauses[id.value]);
    for (const auto& [m, a] : q.terms()) {
      if (m.is_one()) {
        clause_scalars[id.value] += a;
        continue;
      }
      for (const auto& [v, e] : m.factors()) {
        if (!clause_support.contains(v)) {
          throw NotNormalizable(
              "clause multiplier term " + Polynomial(m, a).to_string() +
              " cannot be reassociated into clause " + std::to_string(id.value));
        }
      }
      // Reduce a*cur down to a*M(C): while some exponent exceeds the
      // clause's, a*cur = a*cur/v + a*(cur/v^2)*(v^2 - v).
      Monomial current = m.times(clause_support);
      while (!(current == clause_support)) {
        ExtVar v;
        for (const auto& [w, e] : current.factors()) {
          if (e > clause_support.exponent(w)) {
            v = w;
            break;
          }
        }
        Monomial stub;
        current.divide(Monomial::of(v, 2), &stub);
        Polynomial correction(stub, a);
        bool_mult[v.base()] += correction;
        if (v.is_twin()) {
          Polynomial twin_diff = Polynomial::variable(twin_var(v.base())) -
                                 Polynomial::variable(base_var(v.base()));
          twin_mult[v.base()] += correction * twin_diff;
        }
        current.divide(Monomial::of(v), &current);
      }
      clause_scalars[id.value] += a;
    }
  }

  WeightedSteps steps;
  for (const auto& [j, s] : clause_scalars) {
    if (s == 0) continue;
    std::vector<Literal> lits(qbf.clauses[j].literals());
    steps.add(WResStep::Kind::kAxiom, std::move(lits), 0, false, -s);
  }
  for (const auto& [x, q] : bool_mult) {
    for (const auto& [m, a] : q.terms()) {
      // a*m*(x^2-x) is an idempotency application on C(m) with literal -x.
      steps.add(WResStep::Kind::kIdem, monomial_literals(m), x, true, a);
    }
  }
  for (const auto& [x, q] : twin_mult) {
    for (const auto& [m, a] : q.terms()) {
      steps.add(WResStep::Kind::kSymCut, monomial_literals(m), x, false, a);
    }
  }
  for (const auto& [u, q] : universal) {
    for (const auto& [m, a] : q.terms()) {
      // a*m*(1-2u): reduction on C(m) with literal -u and weight -a.
      steps.add(WResStep::Kind::kUnivRed, monomial_literals(m), u, true, -a);
    }
  }

  WResProof proof = steps.scaled();
  check_wres(qbf, proof);
  return proof;
}

WResProof qures_to_wres(const Qbf& qbf, const QuResProof& proof) {
  check_qures(qbf, proof);

  WeightedSteps steps;
  std::vector<Clause> derived;
  std::vector<Rational> weights;

  auto weaken_to = [&](Clause from, Rational w, const Clause& target) {
    // Reverse symmetric cuts: (C,w) -> (C v e, w/2) + (C v -e, w/2).
    for (const Literal& l : target.literals()) {
      if (from.contains(l)) continue;
      w /= 2;
      steps.add(WResStep::Kind::kSymCut,
                std::vector<Literal>(from.literals()), l.var, false, -w);
      from = from.with_literal(l);
    }
    return std::make_pair(from, w);
  };

  for (const QuResStep& step : proof.steps) {
    switch (step.kind) {
      case QuResStep::Kind::kAxiom: {
        const Clause& c = qbf.clauses[step.clause_index];
        steps.add(WResStep::Kind::kAxiom, std::vector<Literal>(c.literals()), 0,
                  false, Rational(1));
        derived.push_back(c);
        weights.push_back(Rational(1));
        break;
      }
      case QuResStep::Kind::kUnivReduce: {
        const Clause& premise = derived[step.premise1];
        Clause conclusion = premise.without_var(step.variable);
        bool negated = premise.contains(neg(step.variable));
        Rational w = weights[step.premise1] / 4;
        steps.add(WResStep::Kind::kUnivRed,
                  std::vector<Literal>(conclusion.literals()), step.variable,
                  negated, w);
        derived.push_back(conclusion);
        weights.push_back(w);
        break;
      }
      case QuResStep::Kind::kResolve: {
        const Clause& c = derived[step.premise1];
        const Clause& d = derived[step.premise2];
        VarId v = step.variable;
        const Clause* with_pos = c.contains(pos(v)) ? &c : &d;
        const Clause* with_neg = with_pos == &c ? &d : &c;
        Rational w_pos =
            with_pos == &c ? weights[step.premise1] : weights[step.premise2];
        Rational w_neg =
            with_neg == &d ? weights[step.premise2] : weights[step.premise1];
        Clause resolvent = Clause([&] {
          std::vector<Literal> lits;
          for (const Literal& l : with_pos->without_var(v).literals()) lits.push_back(l);
          for (const Literal& l : with_neg->without_var(v).literals()) lits.push_back(l);
          return lits;
        }());
        Clause target_pos = resolvent.with_literal(pos(v));
        Clause target_neg = resolvent.with_literal(neg(v));
        auto [wp_clause, wp] = weaken_to(*with_pos, w_pos, target_pos);
        auto [wn_clause, wn] = weaken_to(*with_neg, w_neg, target_neg);
        Rational w = std::min(wp, wn) / 2;
        steps.add(WResStep::Kind::kSymCut,
                  std::vector<Literal>(resolvent.literals()), v, false, w);
        derived.push_back(resolvent);
        weights.push_back(w);
        break;
      }
    }
  }

  WResProof result = steps.scaled();
  check_wres(qbf, result);
  return result;
}

QpcProof qns_to_qpc(const Qbf& qbf, const Certificate& cert) {
  if (cert.system != System::kQNS) {
    throw Error("qns_to_qpc expects a QNS certificate");
  }
  verify(qbf, cert);

  QpcProof proof;
  auto push = [&](QpcStep step) {
    proof.steps.push_back(std::move(step));
    return proof.steps.size() - 1;
  };

  // Derive sum q_p p term by term.
  std::size_t acc = 0;
  bool have_acc = false;
  for (const auto& [id, q] : cert.multipliers) {
    if (q.is_zero()) continue;
    std::size_t axiom_index = push(QpcStep::from_axiom(id));
    for (const auto& [m, a] : q.terms()) {
      std::size_t current = axiom_index;
      for (const auto& [v, e] : m.factors()) {
        for (int step = 0; step < e; ++step) {
          current = push(QpcStep::mul(current, v));
        }
      }
      if (!have_acc) {
        acc = push(QpcStep::scale(current, a));
        have_acc = true;
      } else {
        acc = push(QpcStep::lin(acc, current, Rational(1), a));
      }
    }
  }
  if (!have_acc) throw Error("QNS certificate has no clause multipliers");

  // Eliminate universals right to left: reduce at both values and average.
  std::vector<VarId> universals = qbf.prefix.universals();
  for (auto it = universals.rbegin(); it != universals.rend(); ++it) {
    auto qit = cert.universal.find(*it);
    if (qit == cert.universal.end() || qit->second.is_zero()) continue;
    std::size_t high = push(QpcStep::reduce(acc, *it, true));
    std::size_t low = push(QpcStep::reduce(acc, *it, false));
    acc = push(QpcStep::lin(high, low, Rational(1, 2), Rational(1, 2)));
  }
  push(QpcStep::scale(acc, Rational(-1)));

  check_qpc(qbf, proof);
  return proof;
}

namespace {

// Certified expression -p^2 = sum ax*axiom + sum uni_u*(1-2u) + sum c*s^2
// with positive weights c; squares stay weighted until the end so scaling
// is cheap.
struct SosExpr {
  Multipliers ax;
  std::map<VarId, Polynomial> uni;
  std::vector<std::pair<Rational, Polynomial>> squares;

  void scale(const Rational& c) {
    if (c == 0) {
      ax.clear();
      uni.clear();
      squares.clear();
      return;
    }
    for (auto& [id, q] : ax) q = q.scale(c);
    for (auto& [u, q] : uni) q = q.scale(c);
    for (auto& [w, s] : squares) w *= c;
  }

  void add(const SosExpr& other) {
    for (const auto& [id, q] : other.ax) ax[id] += q;
    for (const auto& [u, q] : other.uni) uni[u] += q;
    squares.insert(squares.end(), other.squares.begin(), other.squares.end());
  }

  void add_square(const Rational& weight, Polynomial s) {
    if (weight == 0 || s.is_zero()) return;
    squares.push_back({weight, std::move(s)});
  }
};

// p = p_hat + g*(u^2-u) + h*(u+~u-1) with p_hat linear in u and ~u-free.
void normalize_wrt(const Polynomial& p, VarId u, Polynomial* p_hat,
                   Polynomial* g, Polynomial* h) {
  std::vector<std::pair<Monomial, Rational>> work(p.terms().begin(),
                                                  p.terms().end());
  *p_hat = Polynomial();
  *g = Polynomial();
  *h = Polynomial();
  ExtVar plain = base_var(u);
  ExtVar tw = twin_var(u);
  while (!work.empty()) {
    auto [m, c] = work.back();
    work.pop_back();
    if (c == 0) continue;
    if (m.contains(tw)) {
      Monomial rest;
      m.divide(Monomial::of(tw), &rest);
      h->add_term(rest, c);
      work.push_back({rest, c});
      work.push_back({rest.times(plain), -c});
      continue;
    }
    if (m.exponent(plain) >= 2) {
      Monomial reduced;
      m.divide(Monomial::of(plain), &reduced);
      Monomial stub;
      reduced.divide(Monomial::of(plain), &stub);
      g->add_term(stub, c);
      work.push_back({reduced, c});
      continue;
    }
    p_hat->add_term(m, c);
  }
}

}  // namespace

Certificate qpc_to_qsos(const Qbf& qbf, const QpcProof& proof) {
  check_qpc(qbf, proof);
  std::vector<Polynomial> derived = replay_qpc(qbf, proof);

  std::vector<SosExpr> exprs(proof.steps.size());
  for (std::size_t i = 0; i < proof.steps.size(); ++i) {
    const QpcStep& step = proof.steps[i];
    SosExpr& e = exprs[i];
    switch (step.kind) {
      case QpcStep::Kind::kAxiom: {
        e.ax[step.axiom] = -derived[i];
        break;
      }
      case QpcStep::Kind::kLinComb: {
        // -(ap+bq)^2 = -2a^2 p^2 - 2b^2 q^2 + (ap - bq)^2
        SosExpr left = exprs[step.premise1];
        left.scale(2 * step.a * step.a);
        SosExpr right = exprs[step.premise2];
        right.scale(2 * step.b * step.b);
        e = std::move(left);
        e.add(right);
        e.add_square(Rational(1), derived[step.premise1].scale(step.a) -
                                      derived[step.premise2].scale(step.b));
        break;
      }
      case QpcStep::Kind::kScale: {
        e = exprs[step.premise1];
        e.scale(step.a * step.a);
        break;
      }
      case QpcStep::Kind::kMul: {
        // -(xp)^2 = -p^2 + (p - xp)^2 + 2p^2 (x - x^2)
        const Polynomial& p = derived[step.premise1];
        Polynomial squared = p * p;
        e = exprs[step.premise1];
        e.add_square(Rational(1), p - derived[i]);
        VarId x = step.mul_var.base();
        e.ax[AxiomId::bool_axiom(x)] -= squared.scale(Rational(2));
        if (step.mul_var.is_twin()) {
          // ~x^2 - ~x = (x^2 - x) + (~x - x)(x + ~x - 1)
          Polynomial twin_diff = Polynomial::variable(twin_var(x)) -
                                 Polynomial::variable(base_var(x));
          e.ax[AxiomId::twin_axiom(x)] -= squared.scale(Rational(2)) * twin_diff;
        }
        break;
      }
      case QpcStep::Kind::kUnivRed: {
        const Polynomial& premise = derived[step.premise1];
        VarId u = step.red_var;
        // Certified bridge to the u-linear, twin-free form p_hat:
        // -p_hat^2 = -premise^2 + (2*premise - W) * W with
        // W = g*(u^2-u) + h*(u+~u-1).
        Polynomial p_hat, g, h;
        normalize_wrt(premise, u, &p_hat, &g, &h);
        SosExpr hat = exprs[step.premise1];
        if (!g.is_zero() || !h.is_zero()) {
          Polynomial bool_ax(Monomial::of(base_var(u), 2), Rational(1));
          bool_ax.add_term(Monomial::of(base_var(u)), Rational(-1));
          Polynomial twin_ax(Monomial::of(base_var(u)), Rational(1));
          twin_ax.add_term(Monomial::of(twin_var(u)), Rational(1));
          twin_ax.add_term(Monomial::one(), Rational(-1));
          Polynomial w_poly = g * bool_ax + h * twin_ax;
          Polynomial factor = premise.scale(Rational(2)) - w_poly;
          if (!g.is_zero()) hat.ax[AxiomId::bool_axiom(u)] += factor * g;
          if (!h.is_zero()) hat.ax[AxiomId::twin_axiom(u)] += factor * h;
        }
        // p_hat = p + q*u; the two reduction identities share the tail
        // -(q^2+2pq)(1-2u) + 2q^2(u^2-u).
        Polynomial q;
        Polynomial p;
        for (const auto& [m, c] : p_hat.terms()) {
          if (m.contains(base_var(u))) {
            Monomial rest;
            m.divide(Monomial::of(base_var(u)), &rest);
            q.add_term(rest, c);
          } else {
            p.add_term(m, c);
          }
        }
        hat.scale(Rational(2));
        e = std::move(hat);
        e.add_square(Rational(1), step.red_value ? p : p + q);
        Polynomial reduction_mult = -(q * q + (p * q).scale(Rational(2)));
        if (!reduction_mult.is_zero()) e.uni[u] += reduction_mult;
        Polynomial bool_mult = (q * q).scale(Rational(2));
        if (!bool_mult.is_zero()) e.ax[AxiomId::bool_axiom(u)] += bool_mult;
        break;
      }
    }
  }

  // The final line derives 1, so -1 = ax + uni + squares rearranges into
  // the QSOS identity.
  const SosExpr& last = exprs.back();
  Certificate cert;
  cert.system = System::kQSOS;
  cert.multipliers = last.ax;
  cert.universal = last.uni;
  for (const auto& [weight, s] : last.squares) {
    Integer n = weight.get_num();
    Integer d = weight.get_den();
    for (const Integer& k : four_squares(n * d)) {
      if (k == 0) continue;
      Rational factor(k, d);
      factor.canonicalize();
      cert.squares.push_back(s.scale(factor));
    }
  }
  for (auto it = cert.multipliers.begin(); it != cert.multipliers.end();) {
    it = it->second.is_zero() ? cert.multipliers.erase(it) : std::next(it);
  }
  for (auto it = cert.universal.begin(); it != cert.universal.end();) {
    it = it->second.is_zero() ? cert.universal.erase(it) : std::next(it);
  }

  verify(qbf, cert);
  return cert;
}

// --------------------------------------------------------------- file IO

namespace {

std::string strip_hash(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<Literal> parse_literal_block(std::istringstream& in, int lineno) {
  std::vector<Literal> lits;
  long lit;
  while (in >> lit) {
    if (lit == 0) return lits;
    VarId v = static_cast<VarId>(lit < 0 ? -lit : lit);
    lits.push_back(lit < 0 ? neg(v) : pos(v));
  }
  throw ParseError(lineno, 1, "literal block not 0-terminated");
}

}  // namespace

QuResProof parse_qures(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  QuResProof proof;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(strip_hash(raw));
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "a") {
      int j;
      if (!(ls >> j)) throw ParseError(lineno, 1, "expected 'a <clause>'");
      proof.steps.push_back(QuResStep::axiom(j));
    } else if (head == "r") {
      std::size_t i, k;
      int v;
      if (!(ls >> i >> k >> v)) throw ParseError(lineno, 1, "expected 'r <i> <k> <var>'");
      proof.steps.push_back(QuResStep::resolve(i, k, v));
    } else if (head == "d") {
      std::size_t i;
      int v;
      if (!(ls >> i >> v)) throw ParseError(lineno, 1, "expected 'd <i> <var>'");
      proof.steps.push_back(QuResStep::reduce(i, v));
    } else {
      throw ParseError(lineno, 1, "unknown step '" + head + "'");
    }
  }
  return proof;
}

std::string write_qures(const QuResProof& proof) {
  std::ostringstream out;
  for (const QuResStep& s : proof.steps) {
    switch (s.kind) {
      case QuResStep::Kind::kAxiom:
        out << "a " << s.clause_index << "\n";
        break;
      case QuResStep::Kind::kResolve:
        out << "r " << s.premise1 << " " << s.premise2 << " " << s.variable << "\n";
        break;
      case QuResStep::Kind::kUnivReduce:
        out << "d " << s.premise1 << " " << s.variable << "\n";
        break;
    }
  }
  return out.str();
}

WResProof parse_wres(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  WResProof proof;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_hash(raw);
    auto colon = line.find(':');
    std::istringstream head_in(colon == std::string::npos ? line
                                                          : line.substr(0, colon));
    std::string head;
    if (!(head_in >> head)) continue;
    if (colon == std::string::npos) {
      throw ParseError(lineno, 1, "expected '<rule> <w> [pivot] : <lits> 0'");
    }
    std::istringstream tail_in(line.substr(colon + 1));
    std::string weight_text;
    if (!(head_in >> weight_text)) throw ParseError(lineno, 1, "missing weight");
    Integer w;
    try {
      w = Integer(weight_text);
    } catch (const std::invalid_argument&) {
      throw ParseError(lineno, 1, "malformed weight '" + weight_text + "'");
    }
    std::vector<Literal> lits = parse_literal_block(tail_in, lineno);
    if (head == "ax") {
      proof.steps.push_back(WResStep::axiom(std::move(lits), w));
      continue;
    }
    long pivot;
    if (!(head_in >> pivot) || pivot == 0) {
      throw ParseError(lineno, 1, "missing pivot for '" + head + "'");
    }
    VarId v = static_cast<VarId>(pivot < 0 ? -pivot : pivot);
    if (head == "cut") {
      proof.steps.push_back(WResStep::sym_cut(std::move(lits), v, w));
    } else if (head == "idem") {
      proof.steps.push_back(
          WResStep::idem(std::move(lits), pivot < 0 ? neg(v) : pos(v), w));
    } else if (head == "red") {
      proof.steps.push_back(
          WResStep::univ_red(std::move(lits), pivot < 0 ? neg(v) : pos(v), w));
    } else {
      throw ParseError(lineno, 1, "unknown rule '" + head + "'");
    }
  }
  return proof;
}

std::string write_wres(const WResProof& proof) {
  std::ostringstream out;
  for (const WResStep& s : proof.steps) {
    switch (s.kind) {
      case WResStep::Kind::kAxiom:
        out << "ax " << s.weight.get_str();
        break;
      case WResStep::Kind::kSymCut:
        out << "cut " << s.weight.get_str() << " " << s.variable;
        break;
      case WResStep::Kind::kIdem:
        out << "idem " << s.weight.get_str() << " "
            << (s.negated ? -s.variable : s.variable);
        break;
      case WResStep::Kind::kUnivRed:
        out << "red " << s.weight.get_str() << " "
            << (s.negated ? -s.variable : s.variable);
        break;
    }
    out << " :";
    for (const Literal& l : s.clause) {
      out << " " << (l.negated ? "-" : "") << l.var;
    }
    out << " 0\n";
  }
  return out.str();
}

QpcProof parse_qpc(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  QpcProof proof;
  while (std::getline(in, raw)) {
    ++lineno;
    std::istringstream ls(strip_hash(raw));
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "ax") {
      std::string kind;
      int value;
      if (!(ls >> kind >> value)) {
        throw ParseError(lineno, 1, "expected 'ax <clause|bool|twin> <id>'");
      }
      AxiomId id = kind == "clause" ? AxiomId::clause(value)
                   : kind == "bool" ? AxiomId::bool_axiom(value)
                   : kind == "twin"
                       ? AxiomId::twin_axiom(value)
                       : throw ParseError(lineno, 1, "unknown axiom kind");
      proof.steps.push_back(QpcStep::from_axiom(id));
    } else if (head == "lin") {
      std::size_t i, k;
      std::string a, b;
      if (!(ls >> i >> k >> a >> b)) {
        throw ParseError(lineno, 1, "expected 'lin <i> <k> <a> <b>'");
      }
      proof.steps.push_back(
          QpcStep::lin(i, k, parse_rational(a), parse_rational(b)));
    } else if (head == "mul") {
      std::size_t i;
      long v;
      if (!(ls >> i >> v) || v == 0) {
        throw ParseError(lineno, 1, "expected 'mul <i> <var>'");
      }
      proof.steps.push_back(QpcStep::mul(
          i, v < 0 ? twin_var(static_cast<VarId>(-v)) : base_var(static_cast<VarId>(v))));
    } else if (head == "scale") {
      std::size_t i;
      std::string a;
      if (!(ls >> i >> a)) throw ParseError(lineno, 1, "expected 'scale <i> <a>'");
      proof.steps.push_back(QpcStep::scale(i, parse_rational(a)));
    } else if (head == "red") {
      std::size_t i;
      int v, b;
      if (!(ls >> i >> v >> b) || (b != 0 && b != 1)) {
        throw ParseError(lineno, 1, "expected 'red <i> <var> <0|1>'");
      }
      proof.steps.push_back(QpcStep::reduce(i, v, b == 1));
    } else {
      throw ParseError(lineno, 1, "unknown step '" + head + "'");
    }
  }
  return proof;
}

std::string write_qpc(const QpcProof& proof) {
  std::ostringstream out;
  for (const QpcStep& s : proof.steps) {
    switch (s.kind) {
      case QpcStep::Kind::kAxiom:
        out << "ax " << s.axiom.to_string() << "\n";
        break;
      case QpcStep::Kind::kLinComb:
        out << "lin " << s.premise1 << " " << s.premise2 << " " << to_string(s.a)
            << " " << to_string(s.b) << "\n";
        break;
      case QpcStep::Kind::kMul:
        out << "mul " << s.premise1 << " "
            << (s.mul_var.is_twin() ? -s.mul_var.base() : s.mul_var.base())
            << "\n";
        break;
      case QpcStep::Kind::kScale:
        out << "scale " << s.premise1 << " " << to_string(s.a) << "\n";
        break;
      case QpcStep::Kind::kUnivRed:
        out << "red " << s.premise1 << " " << s.red_var << " "
            << (s.red_value ? 1 : 0) << "\n";
        break;
    }
  }
  return out.str();
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

QuResProof read_qures_file(const std::string& path) {
  return parse_qures(slurp(path));
}
WResProof read_wres_file(const std::string& path) {
  return parse_wres(slurp(path));
}
QpcProof read_qpc_file(const std::string& path) {
  return parse_qpc(slurp(path));
}

}  // namespace qalg
