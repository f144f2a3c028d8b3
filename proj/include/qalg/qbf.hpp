#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qalg/poly.hpp"

namespace qalg {

enum class Quantifier { kExists, kForall };

struct Literal {
  VarId var;
  bool negated;
  auto operator<=>(const Literal&) const = default;
};

inline Literal pos(VarId v) { return {v, false}; }
inline Literal neg(VarId v) { return {v, true}; }

// Clause as a duplicate-free sorted literal set. Tautologies are rejected
// at construction.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);

  const std::vector<Literal>& literals() const { return literals_; }
  bool empty() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }
  bool contains(Literal l) const;
  bool contains_var(VarId v) const;
  // nullopt if v does not occur.
  std::optional<bool> polarity(VarId v) const;
  Clause without_var(VarId v) const;
  Clause with_literal(Literal l) const;  // may throw TautologyError

  bool satisfied_by(const Assignment& alpha) const;

  auto operator<=>(const Clause&) const = default;

 private:
  std::vector<Literal> literals_;
};

// Ordered quantifier prefix. Every variable appears exactly once;
// "w left of u" means position(w) < position(u).
class Prefix {
 public:
  Prefix() = default;

  void append(Quantifier q, VarId v);
  const std::vector<std::pair<Quantifier, VarId>>& entries() const {
    return entries_;
  }
  std::size_t size() const { return entries_.size(); }
  bool contains(VarId v) const { return positions_.count(v) > 0; }
  std::size_t position(VarId v) const;  // throws UndeclaredVariable
  Quantifier quantifier(VarId v) const;
  bool is_universal(VarId v) const {
    return quantifier(v) == Quantifier::kForall;
  }
  bool is_existential(VarId v) const {
    return quantifier(v) == Quantifier::kExists;
  }
  // Strictly left of u; twins inherit the position of their base variable.
  bool left_of(VarId w, VarId u) const { return position(w) < position(u); }
  Prefix without(VarId v) const;
  std::vector<VarId> universals() const;
  std::vector<VarId> existentials() const;

  bool operator==(const Prefix&) const;

 private:
  std::vector<std::pair<Quantifier, VarId>> entries_;
  std::map<VarId, std::size_t> positions_;
};

// Prenex QBF with CNF matrix. Every clause variable occurs in the prefix.
struct Qbf {
  Prefix prefix;
  std::vector<Clause> clauses;

  void validate() const;  // checks the clause-variable invariant
  bool operator==(const Qbf&) const = default;
};

// Identifies one polynomial of enc(phi): a clause monomial M(C_j), a Boolean
// axiom v^2 - v, or a twin axiom v + ~v - 1.
struct AxiomId {
  enum class Kind { kClause, kBool, kTwin };
  Kind kind;
  int value;  // clause index (0-based) or variable id

  static AxiomId clause(int j) { return {Kind::kClause, j}; }
  static AxiomId bool_axiom(VarId v) { return {Kind::kBool, v}; }
  static AxiomId twin_axiom(VarId v) { return {Kind::kTwin, v}; }

  auto operator<=>(const AxiomId&) const = default;
  std::string to_string() const;
};

// M(C_j), v^2 - v, or v + ~v - 1. Throws InvalidAxiomId on bad ids.
Polynomial axiom_poly(const Qbf& qbf, const AxiomId& id);

// The clause monomial prod_{v in P} ~v * prod_{v in N} v.
Monomial clause_monomial(const Clause& c);

// Restriction by an existential variable: satisfied clauses removed,
// falsified literals removed, v dropped from the prefix. The empty clause
// is retained as bottom.
Qbf restrict_qbf(const Qbf& qbf, VarId v, bool b);

struct RestrictedQbf {
  Qbf qbf;
  // old clause index -> new index, or nullopt if the clause was satisfied
  std::vector<std::optional<std::size_t>> clause_map;
};
RestrictedQbf restrict_qbf_with_map(const Qbf& qbf, VarId v, bool b);

// Benchmark families.
Qbf gen_forall_or(int n);
Qbf gen_parity(int n);
Qbf gen_equality(int n);
Qbf gen_qmajority(int n);

// Truth value by minimax over the prefix order. Throws TooLarge above the cap.
bool evaluate_qbf(const Qbf& qbf, int max_vars = 24);

// QDIMACS reader/writer. Free variables are rejected (UndeclaredVariable).
Qbf parse_qdimacs(const std::string& text);
Qbf read_qdimacs_file(const std::string& path);
std::string write_qdimacs(const Qbf& qbf);

}  // namespace qalg
