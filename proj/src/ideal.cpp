#include "qalg/ideal.hpp"

#include <deque>
#include <sstream>

#include "qalg/errors.hpp"

namespace qalg {

namespace {

std::string assignment_to_string(const Assignment& alpha) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [v, b] : alpha) {
    if (!first) out << ", ";
    out << "x" << v << ":" << (b ? 1 : 0);
    first = false;
  }
  out << "}";
  return out.str();
}

// Rewrites r modulo Boolean and twin axioms into a multilinear twin-free
// normal form, crediting the reduction multipliers.
Polynomial normalize(const Polynomial& r, Multipliers* mult) {
  std::deque<std::pair<Monomial, Rational>> work(r.terms().begin(),
                                                 r.terms().end());
  Polynomial normal;
  while (!work.empty()) {
    auto [m, c] = work.front();
    work.pop_front();
    if (c == 0) continue;

    // One twin occurrence: ~v = (1 - v) + (v + ~v - 1).
    ExtVar tv;
    bool has_twin = false;
    for (const auto& [v, e] : m.factors()) {
      if (v.is_twin()) {
        tv = v;
        has_twin = true;
        break;
      }
    }
    if (has_twin) {
      Monomial rest;
      m.divide(Monomial::of(tv), &rest);
      (*mult)[AxiomId::twin_axiom(tv.base())].add_term(rest, c);
      work.push_back({rest, c});
      work.push_back({rest.times(base_var(tv.base())), -c});
      continue;
    }

    // One exponent step: v^e = v^(e-1) + v^(e-2) * (v^2 - v).
    ExtVar sq;
    bool has_square = false;
    for (const auto& [v, e] : m.factors()) {
      if (e >= 2) {
        sq = v;
        has_square = true;
        break;
      }
    }
    if (has_square) {
      Monomial reduced;
      m.divide(Monomial::of(sq), &reduced);  // exponent e-1
      Monomial stub;
      reduced.divide(Monomial::of(sq), &stub);  // exponent e-2
      (*mult)[AxiomId::bool_axiom(sq.base())].add_term(stub, c);
      work.push_back({reduced, c});
      continue;
    }

    normal.add_term(m, c);
  }
  return normal;
}

struct Expansion {
  const Qbf& qbf;
  Multipliers& mult;

  void run(const Polynomial& g, std::size_t pos, Assignment& alpha) {
    if (g.is_zero()) return;
    if (pos == qbf.prefix.size()) {
      leaf(g, alpha);
      return;
    }
    VarId v = qbf.prefix.entries()[pos].second;
    Polynomial g1 = g.restrict(v, true);
    Polynomial g0 = g.restrict(v, false);
    // g = g1*v + g0*~v - g0*(v + ~v - 1) exactly, for multilinear g.
    if (!g0.is_zero()) {
      mult[AxiomId::twin_axiom(v)] -= g0.times(indicator(alpha));
    }
    alpha[v] = true;
    run(g1, pos + 1, alpha);
    alpha[v] = false;
    run(g0, pos + 1, alpha);
    alpha.erase(v);
  }

  void leaf(const Polynomial& g, const Assignment& alpha) {
    Rational c = g.coefficient(Monomial::one());
    Monomial chi = indicator(alpha);
    for (std::size_t j = 0; j < qbf.clauses.size(); ++j) {
      if (!qbf.clauses[j].satisfied_by(alpha)) {
        Monomial quotient;
        bool ok = chi.divide(clause_monomial(qbf.clauses[j]), &quotient);
        (void)ok;  // a falsified clause's monomial always divides chi
        mult[AxiomId::clause(static_cast<int>(j))].add_term(quotient, c);
        return;
      }
    }
    throw NotInIdeal("polynomial does not vanish on the satisfying assignment " +
                     assignment_to_string(alpha));
  }
};

void enumerate_assignments(const Qbf& qbf, std::size_t pos, Assignment& alpha,
                           const Polynomial& r) {
  if (pos == qbf.prefix.size()) {
    bool satisfied = true;
    for (const Clause& c : qbf.clauses) {
      if (!c.satisfied_by(alpha)) {
        satisfied = false;
        break;
      }
    }
    if (satisfied && r.evaluate(alpha) != 0) {
      throw NotInIdeal("polynomial does not vanish on the satisfying assignment " +
                       assignment_to_string(alpha));
    }
    return;
  }
  VarId v = qbf.prefix.entries()[pos].second;
  alpha[v] = false;
  enumerate_assignments(qbf, pos + 1, alpha, r);
  alpha[v] = true;
  enumerate_assignments(qbf, pos + 1, alpha, r);
  alpha.erase(v);
}

}  // namespace

Polynomial expand_multipliers(const Multipliers& m, const Qbf& qbf) {
  Polynomial total;
  for (const auto& [id, q] : m) {
    total += q * axiom_poly(qbf, id);
  }
  return total;
}

Multipliers express_in_ideal(const Polynomial& r, const Qbf& qbf,
                             bool check_precondition, bool self_check) {
  for (VarId v : r.base_vars()) {
    if (!qbf.prefix.contains(v)) {
      throw UndeclaredVariable("polynomial variable x" + std::to_string(v) +
                               " not in the prefix");
    }
  }
  if (check_precondition) {
    Assignment alpha;
    enumerate_assignments(qbf, 0, alpha, r);
  }

  Multipliers mult;
  Polynomial normal = normalize(r, &mult);
  Expansion expansion{qbf, mult};
  Assignment alpha;
  expansion.run(normal, 0, alpha);

  // Drop zero multipliers picked up along the way.
  for (auto it = mult.begin(); it != mult.end();) {
    if (it->second.is_zero()) {
      it = mult.erase(it);
    } else {
      ++it;
    }
  }

  if (self_check) {
    Polynomial expanded = expand_multipliers(mult, qbf);
    if (!(expanded == r)) {
      throw Error("internal error: ideal decomposition re-expansion mismatch");
    }
  }
  return mult;
}

}  // namespace qalg
