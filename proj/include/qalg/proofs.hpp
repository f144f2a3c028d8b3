#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qalg/cert.hpp"
#include "qalg/poly.hpp"
#include "qalg/qbf.hpp"

namespace qalg {

struct TraceMeasures {
  std::size_t size = 0;
  std::size_t qsize = 0;
};

// ---------------------------------------------------------------- QU-Res

struct QuResStep {
  enum class Kind { kAxiom, kResolve, kUnivReduce };
  Kind kind;
  int clause_index = -1;     // axiom
  std::size_t premise1 = 0;  // resolve / reduce
  std::size_t premise2 = 0;  // resolve
  VarId variable = 0;        // pivot / reduced universal

  static QuResStep axiom(int j) {
    return {Kind::kAxiom, j, 0, 0, 0};
  }
  static QuResStep resolve(std::size_t i, std::size_t k, VarId pivot) {
    return {Kind::kResolve, -1, i, k, pivot};
  }
  static QuResStep reduce(std::size_t i, VarId u) {
    return {Kind::kUnivReduce, -1, i, 0, u};
  }
};

struct QuResProof {
  std::vector<QuResStep> steps;
};

// Validates every step (pivot polarities, tautology-free resolvents, the
// left-of reduction side condition) and that the final clause is empty.
// size = step count, qsize = reduction count.
TraceMeasures check_qures(const Qbf& qbf, const QuResProof& proof);

// ---------------------------------------------------------------- Q-w-Res

// Weighted clauses are multisets of literals; they correspond bijectively
// to monomials (positive literal v -> factor ~v, negative -> v), and a
// configuration is the total weight per clause.
using WResConfiguration = std::map<Monomial, Integer>;

Monomial literals_monomial(const std::vector<Literal>& literals);
std::vector<Literal> monomial_literals(const Monomial& m);

struct WResStep {
  enum class Kind { kAxiom, kSymCut, kIdem, kUnivRed };
  Kind kind;
  std::vector<Literal> clause;  // the base clause C of the rule
  VarId variable = 0;           // cut variable / idem / reduction literal var
  bool negated = false;         // literal polarity for idem / red
  Integer weight;               // negative weight = reverse application

  static WResStep axiom(std::vector<Literal> c, Integer w) {
    return {Kind::kAxiom, std::move(c), 0, false, std::move(w)};
  }
  static WResStep sym_cut(std::vector<Literal> c, VarId x, Integer w) {
    return {Kind::kSymCut, std::move(c), x, false, std::move(w)};
  }
  static WResStep idem(std::vector<Literal> c, Literal l, Integer w) {
    return {Kind::kIdem, std::move(c), l.var, l.negated, std::move(w)};
  }
  static WResStep univ_red(std::vector<Literal> c, Literal l, Integer w) {
    return {Kind::kUnivRed, std::move(c), l.var, l.negated, std::move(w)};
  }
};

struct WResProof {
  std::vector<WResStep> steps;
};

// Replays the configuration deltas up to equivalence; the final
// configuration must contain the empty clause with positive weight and no
// negative weights. size = step count, qsize = reduction count.
TraceMeasures check_wres(const Qbf& qbf, const WResProof& proof);
WResConfiguration replay_wres(const Qbf& qbf, const WResProof& proof);

// ------------------------------------------------------------------ Q-PC

struct QpcStep {
  enum class Kind { kAxiom, kLinComb, kMul, kScale, kUnivRed };
  Kind kind;
  AxiomId axiom = AxiomId::clause(0);
  std::size_t premise1 = 0;
  std::size_t premise2 = 0;
  Rational a;
  Rational b;
  ExtVar mul_var;
  VarId red_var = 0;
  bool red_value = false;

  static QpcStep from_axiom(AxiomId id) {
    QpcStep s;
    s.kind = Kind::kAxiom;
    s.axiom = id;
    return s;
  }
  static QpcStep lin(std::size_t i, std::size_t k, Rational a, Rational b) {
    QpcStep s;
    s.kind = Kind::kLinComb;
    s.premise1 = i;
    s.premise2 = k;
    s.a = std::move(a);
    s.b = std::move(b);
    return s;
  }
  static QpcStep mul(std::size_t i, ExtVar v) {
    QpcStep s;
    s.kind = Kind::kMul;
    s.premise1 = i;
    s.mul_var = v;
    return s;
  }
  static QpcStep scale(std::size_t i, Rational a) {
    QpcStep s;
    s.kind = Kind::kScale;
    s.premise1 = i;
    s.a = std::move(a);
    return s;
  }
  static QpcStep reduce(std::size_t i, VarId u, bool b) {
    QpcStep s;
    s.kind = Kind::kUnivRed;
    s.premise1 = i;
    s.red_var = u;
    s.red_value = b;
    return s;
  }
};

struct QpcProof {
  std::vector<QpcStep> steps;
};

// Replays the polynomial derivation; the final polynomial must equal 1.
// size = monomial count over all derived polynomials, qsize = monomial
// count over the reduction premises.
TraceMeasures check_qpc(const Qbf& qbf, const QpcProof& proof);
std::vector<Polynomial> replay_qpc(const Qbf& qbf, const QpcProof& proof,
                                   TraceMeasures* measures = nullptr);

// ----------------------------------------------------------- translations

// Incremental configuration-to-polynomial transfer; qsize equals the
// reduction count of the proof.
Certificate wres_to_qsa(const Qbf& qbf, const WResProof& proof);

// Normalizes clause multipliers to scalars by monomial-wise reassociation
// through the Boolean/twin axioms (NotNormalizable when a multiplier
// monomial leaves the clause's support), then emits one rule application
// per multiplier term, scaled to integer weights.
WResProof qsa_to_wres(const Qbf& qbf, const Certificate& cert);

// Resolution steps become weakenings plus one symmetric cut; weights follow
// the inductive halving scheme and are scaled to integers at the end.
// Output size <= #vars * |proof|, reduction count preserved.
WResProof qures_to_wres(const Qbf& qbf, const QuResProof& proof);

// Derives sum q_p p, then eliminates each universal by reducing at both
// values and averaging the halves; one final scale by -1 yields 1.
QpcProof qns_to_qpc(const Qbf& qbf, const Certificate& cert);

// Inductively certifies -p_i^2 as axiom multiples, (1-2u) multiples and
// squares, via the sum/product/reduction identities; at the final line the
// expression rearranges into a verifying QSOS certificate.
Certificate qpc_to_qsos(const Qbf& qbf, const QpcProof& proof);

// --------------------------------------------------------------- file IO

// QU-Res: "a <j>" / "r <i> <k> <var>" / "d <i> <var>", 0-based indices.
QuResProof parse_qures(const std::string& text);
std::string write_qures(const QuResProof& proof);

// Q-w-Res: "ax <w> : <lits> 0" / "cut <w> <var> : <lits> 0" /
// "idem <w> <lit> : <lits> 0" / "red <w> <lit> : <lits> 0".
WResProof parse_wres(const std::string& text);
std::string write_wres(const WResProof& proof);

// Q-PC: "ax clause <j>" / "ax bool <v>" / "ax twin <v>" /
// "lin <i> <k> <a> <b>" / "mul <i> <var>" (negative var = twin) /
// "scale <i> <a>" / "red <i> <var> <0|1>".
QpcProof parse_qpc(const std::string& text);
std::string write_qpc(const QpcProof& proof);

QuResProof read_qures_file(const std::string& path);
WResProof read_wres_file(const std::string& path);
QpcProof read_qpc_file(const std::string& path);

}  // namespace qalg
