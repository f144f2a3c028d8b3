#include "qalg/qbf.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qalg/errors.hpp"

namespace qalg {

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()),
                  literals_.end());
  for (std::size_t i = 0; i + 1 < literals_.size(); ++i) {
    if (literals_[i].var == literals_[i + 1].var) {
      throw TautologyError("clause contains both x" +
                           std::to_string(literals_[i].var) + " and its negation");
    }
  }
}

bool Clause::contains(Literal l) const {
  return std::binary_search(literals_.begin(), literals_.end(), l);
}

bool Clause::contains_var(VarId v) const {
  return contains(pos(v)) || contains(neg(v));
}

std::optional<bool> Clause::polarity(VarId v) const {
  if (contains(pos(v))) return false;  // positive literal -> negated=false
  if (contains(neg(v))) return true;
  return std::nullopt;
}

Clause Clause::without_var(VarId v) const {
  std::vector<Literal> kept;
  kept.reserve(literals_.size());
  for (const Literal& l : literals_) {
    if (l.var != v) kept.push_back(l);
  }
  return Clause(std::move(kept));
}

Clause Clause::with_literal(Literal l) const {
  std::vector<Literal> lits = literals_;
  lits.push_back(l);
  return Clause(std::move(lits));
}

bool Clause::satisfied_by(const Assignment& alpha) const {
  for (const Literal& l : literals_) {
    auto it = alpha.find(l.var);
    if (it == alpha.end()) {
      throw UnassignedVariable("clause variable x" + std::to_string(l.var) +
                               " has no value");
    }
    if (it->second != l.negated) return true;
  }
  return false;
}

void Prefix::append(Quantifier q, VarId v) {
  if (v < 1) throw ParseError(0, 0, "variable ids start at 1");
  if (positions_.count(v)) {
    throw ParseError(0, 0,
                     "variable x" + std::to_string(v) + " quantified twice");
  }
  positions_[v] = entries_.size();
  entries_.push_back({q, v});
}

std::size_t Prefix::position(VarId v) const {
  auto it = positions_.find(v);
  if (it == positions_.end()) {
    throw UndeclaredVariable("variable x" + std::to_string(v) +
                             " not in the prefix");
  }
  return it->second;
}

Quantifier Prefix::quantifier(VarId v) const {
  return entries_[position(v)].first;
}

Prefix Prefix::without(VarId v) const {
  Prefix result;
  for (const auto& [q, w] : entries_) {
    if (w != v) result.append(q, w);
  }
  return result;
}

std::vector<VarId> Prefix::universals() const {
  std::vector<VarId> result;
  for (const auto& [q, v] : entries_) {
    if (q == Quantifier::kForall) result.push_back(v);
  }
  return result;
}

std::vector<VarId> Prefix::existentials() const {
  std::vector<VarId> result;
  for (const auto& [q, v] : entries_) {
    if (q == Quantifier::kExists) result.push_back(v);
  }
  return result;
}

bool Prefix::operator==(const Prefix& other) const {
  return entries_ == other.entries_;
}

void Qbf::validate() const {
  for (const Clause& c : clauses) {
    for (const Literal& l : c.literals()) {
      if (!prefix.contains(l.var)) {
        throw UndeclaredVariable("clause variable x" + std::to_string(l.var) +
                                 " not in the prefix");
      }
    }
  }
}

std::string AxiomId::to_string() const {
  switch (kind) {
    case Kind::kClause:
      return "clause " + std::to_string(value);
    case Kind::kBool:
      return "bool " + std::to_string(value);
    case Kind::kTwin:
      return "twin " + std::to_string(value);
  }
  return "?";
}

Monomial clause_monomial(const Clause& c) {
  Monomial m;
  for (const Literal& l : c.literals()) {
    m = m.times(l.negated ? base_var(l.var) : twin_var(l.var));
  }
  return m;
}

Polynomial axiom_poly(const Qbf& qbf, const AxiomId& id) {
  switch (id.kind) {
    case AxiomId::Kind::kClause: {
      if (id.value < 0 || static_cast<std::size_t>(id.value) >= qbf.clauses.size()) {
        throw InvalidAxiomId("clause index " + std::to_string(id.value) +
                             " out of range");
      }
      return Polynomial(clause_monomial(qbf.clauses[id.value]), Rational(1));
    }
    case AxiomId::Kind::kBool: {
      if (!qbf.prefix.contains(id.value)) {
        throw InvalidAxiomId("bool axiom variable x" + std::to_string(id.value) +
                             " not in the prefix");
      }
      Polynomial p(Monomial::of(base_var(id.value), 2), Rational(1));
      p.add_term(Monomial::of(base_var(id.value)), Rational(-1));
      return p;
    }
    case AxiomId::Kind::kTwin: {
      if (!qbf.prefix.contains(id.value)) {
        throw InvalidAxiomId("twin axiom variable x" + std::to_string(id.value) +
                             " not in the prefix");
      }
      Polynomial p(Monomial::of(base_var(id.value)), Rational(1));
      p.add_term(Monomial::of(twin_var(id.value)), Rational(1));
      p.add_term(Monomial::one(), Rational(-1));
      return p;
    }
  }
  throw InvalidAxiomId("unknown axiom kind");
}

RestrictedQbf restrict_qbf_with_map(const Qbf& qbf, VarId v, bool b) {
  if (!qbf.prefix.contains(v) || !qbf.prefix.is_existential(v)) {
    throw NotExistential("x" + std::to_string(v) +
                         " is not an existential prefix variable");
  }
  RestrictedQbf result;
  result.qbf.prefix = qbf.prefix.without(v);
  result.clause_map.resize(qbf.clauses.size());
  for (std::size_t j = 0; j < qbf.clauses.size(); ++j) {
    const Clause& c = qbf.clauses[j];
    std::optional<bool> negated = c.polarity(v);
    if (negated.has_value() && *negated != b) {
      // The literal on v is satisfied; the clause disappears.
      result.clause_map[j] = std::nullopt;
      continue;
    }
    result.clause_map[j] = result.qbf.clauses.size();
    result.qbf.clauses.push_back(negated.has_value() ? c.without_var(v) : c);
  }
  return result;
}

Qbf restrict_qbf(const Qbf& qbf, VarId v, bool b) {
  return restrict_qbf_with_map(qbf, v, b).qbf;
}

Qbf gen_forall_or(int n) {
  if (n < 1) throw InvalidSize("family size must be at least 1");
  Qbf qbf;
  std::vector<Literal> lits;
  for (int i = 1; i <= n; ++i) {
    qbf.prefix.append(Quantifier::kForall, i);
    lits.push_back(pos(i));
  }
  qbf.clauses.push_back(Clause(lits));
  return qbf;
}

Qbf gen_parity(int n) {
  if (n < 1) throw InvalidSize("family size must be at least 1");
  Qbf qbf;
  auto x = [](int i) { return i; };
  auto t = [n](int i) { return n + 1 + i; };
  const VarId u = n + 1;
  for (int i = 1; i <= n; ++i) qbf.prefix.append(Quantifier::kExists, x(i));
  qbf.prefix.append(Quantifier::kForall, u);
  for (int i = 1; i <= n; ++i) qbf.prefix.append(Quantifier::kExists, t(i));

  auto add = [&](std::vector<Literal> lits) {
    qbf.clauses.push_back(Clause(std::move(lits)));
  };
  // t1 <-> x1
  add({neg(t(1)), pos(x(1))});
  add({pos(t(1)), neg(x(1))});
  // u <-/-> tn
  add({pos(u), pos(t(n))});
  add({neg(u), neg(t(n))});
  // t_i <-> t_{i-1} xor x_i
  for (int i = 2; i <= n; ++i) {
    add({neg(t(i)), pos(t(i - 1)), pos(x(i))});
    add({neg(t(i)), neg(t(i - 1)), neg(x(i))});
    add({pos(t(i)), neg(t(i - 1)), pos(x(i))});
    add({pos(t(i)), pos(t(i - 1)), neg(x(i))});
  }
  return qbf;
}

Qbf gen_equality(int n) {
  if (n < 1) throw InvalidSize("family size must be at least 1");
  Qbf qbf;
  auto x = [](int i) { return i; };
  auto u = [n](int i) { return n + i; };
  auto t = [n](int i) { return 2 * n + i; };
  for (int i = 1; i <= n; ++i) qbf.prefix.append(Quantifier::kExists, x(i));
  for (int i = 1; i <= n; ++i) qbf.prefix.append(Quantifier::kForall, u(i));
  for (int i = 1; i <= n; ++i) qbf.prefix.append(Quantifier::kExists, t(i));

  for (int i = 1; i <= n; ++i) {
    qbf.clauses.push_back(Clause({neg(t(i)), pos(x(i)), pos(u(i))}));
    qbf.clauses.push_back(Clause({neg(t(i)), neg(x(i)), neg(u(i))}));
  }
  std::vector<Literal> big_or;
  for (int i = 1; i <= n; ++i) big_or.push_back(pos(t(i)));
  qbf.clauses.push_back(Clause(big_or));
  return qbf;
}

Qbf gen_qmajority(int n) {
  if (n < 1) throw InvalidSize("family size must be at least 1");
  const int threshold = (n + 1) / 2;  // at least half of n
  Qbf qbf;
  for (int i = 1; i <= n; ++i) qbf.prefix.append(Quantifier::kExists, i);
  const VarId u = n + 1;
  qbf.prefix.append(Quantifier::kForall, u);

  VarId next = n + 2;
  // Gate variable for th(i,k) = "at least k of x1..xi are true", built by
  // the counter recurrence th(i,k) = th(i-1,k) or (x_i and th(i-1,k-1)).
  std::map<std::pair<int, int>, VarId> gate;
  std::vector<std::pair<VarId, std::vector<Literal>>> deferred;

  auto reachable_low = [&](int i) { return std::max(1, threshold - (n - i)); };

  std::vector<std::vector<Literal>> clause_buffer;
  auto add = [&](std::vector<Literal> lits) {
    clause_buffer.push_back(std::move(lits));
  };

  for (int i = 1; i <= n; ++i) {
    for (int k = reachable_low(i); k <= std::min(i, threshold); ++k) {
      VarId g = next++;
      gate[{i, k}] = g;
      qbf.prefix.append(Quantifier::kExists, g);
      if (i == 1) {
        // th(1,1) <-> x1
        add({neg(g), pos(1)});
        add({pos(g), neg(1)});
      } else if (k == i) {
        // th(i,i) <-> x_i and th(i-1,i-1)
        VarId prev = gate.at({i - 1, k - 1});
        add({neg(g), pos(i)});
        add({neg(g), pos(prev)});
        add({pos(g), neg(i), neg(prev)});
      } else if (k == 1) {
        // th(i,1) <-> th(i-1,1) or x_i
        VarId prev = gate.at({i - 1, 1});
        add({neg(g), pos(prev), pos(i)});
        add({pos(g), neg(prev)});
        add({pos(g), neg(i)});
      } else {
        // and gate a <-> x_i and th(i-1,k-1), then g <-> th(i-1,k) or a
        VarId carry = gate.at({i - 1, k - 1});
        VarId keep = gate.at({i - 1, k});
        VarId a = next++;
        qbf.prefix.append(Quantifier::kExists, a);
        add({neg(a), pos(i)});
        add({neg(a), pos(carry)});
        add({pos(a), neg(i), neg(carry)});
        add({neg(g), pos(keep), pos(a)});
        add({pos(g), neg(keep)});
        add({pos(g), neg(a)});
      }
    }
  }
  VarId out = gate.at({n, threshold});
  add({pos(u), pos(out)});
  add({neg(u), neg(out)});

  for (auto& lits : clause_buffer) qbf.clauses.push_back(Clause(std::move(lits)));
  return qbf;
}

namespace {

bool evaluate_rec(const Qbf& qbf, std::size_t pos, Assignment& partial) {
  // Once a clause is fully assigned and false the matrix cannot recover.
  bool all_satisfied = true;
  for (const Clause& c : qbf.clauses) {
    bool satisfied = false;
    bool undecided = false;
    for (const Literal& l : c.literals()) {
      auto it = partial.find(l.var);
      if (it == partial.end()) {
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
  if (pos == qbf.prefix.size()) return true;  // no falsified clause remains

  auto [q, v] = qbf.prefix.entries()[pos];
  bool result;
  partial[v] = false;
  result = evaluate_rec(qbf, pos + 1, partial);
  if ((q == Quantifier::kExists && !result) ||
      (q == Quantifier::kForall && result)) {
    partial[v] = true;
    result = evaluate_rec(qbf, pos + 1, partial);
  }
  partial.erase(v);
  return result;
}

}  // namespace

bool evaluate_qbf(const Qbf& qbf, int max_vars) {
  if (qbf.prefix.size() > static_cast<std::size_t>(max_vars)) {
    throw TooLarge("game-tree evaluation capped at " +
                   std::to_string(max_vars) + " variables");
  }
  Assignment partial;
  return evaluate_rec(qbf, 0, partial);
}

namespace {

struct QdimacsParser {
  std::istringstream in;
  int line = 0;

  explicit QdimacsParser(const std::string& text) : in(text) {}

  Qbf parse() {
    Qbf qbf;
    bool saw_problem = false;
    bool saw_clause = false;
    std::size_t declared_vars = 0;
    std::size_t declared_clauses = 0;
    std::string raw;
    while (std::getline(in, raw)) {
      ++line;
      std::istringstream ls(raw);
      std::string head;
      if (!(ls >> head)) continue;  // blank line
      if (head == "c") continue;
      if (head == "p") {
        if (saw_problem) throw ParseError(line, 1, "duplicate problem line");
        std::string fmt;
        long nv = -1, nc = -1;
        if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0) {
          throw ParseError(line, 1, "malformed problem line (want 'p cnf <vars> <clauses>')");
        }
        std::string extra;
        if (ls >> extra) throw ParseError(line, 1, "trailing tokens on problem line");
        declared_vars = static_cast<std::size_t>(nv);
        declared_clauses = static_cast<std::size_t>(nc);
        saw_problem = true;
        continue;
      }
      if (!saw_problem) throw ParseError(line, 1, "expected problem line before '" + head + "'");
      if (head == "e" || head == "a") {
        if (saw_clause) throw ParseError(line, 1, "quantifier line after first clause");
        Quantifier q = head == "e" ? Quantifier::kExists : Quantifier::kForall;
        long v;
        bool terminated = false;
        while (ls >> v) {
          if (v == 0) {
            terminated = true;
            break;
          }
          if (v < 0) throw ParseError(line, 1, "negative variable in quantifier line");
          if (static_cast<std::size_t>(v) > declared_vars) {
            throw ParseError(line, 1, "variable " + std::to_string(v) +
                                          " exceeds declared count");
          }
          try {
            qbf.prefix.append(q, static_cast<VarId>(v));
          } catch (const ParseError& e) {
            throw ParseError(line, 1, e.what());
          }
        }
        if (!terminated) throw ParseError(line, 1, "quantifier line not 0-terminated");
        continue;
      }
      // clause line
      std::istringstream cs(raw);
      long lit;
      std::vector<Literal> lits;
      bool terminated = false;
      while (cs >> lit) {
        if (lit == 0) {
          terminated = true;
          break;
        }
        VarId v = static_cast<VarId>(lit < 0 ? -lit : lit);
        if (static_cast<std::size_t>(v) > declared_vars) {
          throw ParseError(line, 1, "variable " + std::to_string(v) +
                                        " exceeds declared count");
        }
        if (!qbf.prefix.contains(v)) {
          throw UndeclaredVariable("free variable x" + std::to_string(v) +
                                   " at line " + std::to_string(line) +
                                   " (free variables are rejected)");
        }
        lits.push_back(lit < 0 ? neg(v) : pos(v));
      }
      if (!terminated) throw ParseError(line, 1, "clause not 0-terminated");
      qbf.clauses.push_back(Clause(std::move(lits)));
      saw_clause = true;
    }
    if (!saw_problem) throw ParseError(line, 1, "missing problem line");
    if (qbf.clauses.size() != declared_clauses) {
      throw ParseError(line, 1,
                       "clause count mismatch: declared " +
                           std::to_string(declared_clauses) + ", found " +
                           std::to_string(qbf.clauses.size()));
    }
    qbf.validate();
    return qbf;
  }
};

}  // namespace

Qbf parse_qdimacs(const std::string& text) { return QdimacsParser(text).parse(); }

Qbf read_qdimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_qdimacs(buf.str());
}

std::string write_qdimacs(const Qbf& qbf) {
  std::ostringstream out;
  VarId max_var = 0;
  for (const auto& [q, v] : qbf.prefix.entries()) max_var = std::max(max_var, v);
  out << "p cnf " << max_var << " " << qbf.clauses.size() << "\n";
  // Maximal blocks of equal quantifier on one line each.
  std::size_t i = 0;
  const auto& entries = qbf.prefix.entries();
  while (i < entries.size()) {
    Quantifier q = entries[i].first;
    out << (q == Quantifier::kForall ? "a" : "e");
    while (i < entries.size() && entries[i].first == q) {
      out << " " << entries[i].second;
      ++i;
    }
    out << " 0\n";
  }
  for (const Clause& c : qbf.clauses) {
    for (const Literal& l : c.literals()) {
      out << (l.negated ? "-" : "") << l.var << " ";
    }
    out << "0\n";
  }
  return out.str();
}

}  // namespace qalg
