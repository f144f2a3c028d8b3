#include "qalg/cert.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qalg/errors.hpp"

namespace qalg {

std::string system_name(System s) {
  switch (s) {
    case System::kQNS:
      return "QNS";
    case System::kQSA:
      return "QSA";
    case System::kQSOS:
      return "QSOS";
  }
  return "?";
}

System parse_system(const std::string& name) {
  if (name == "QNS" || name == "qns") return System::kQNS;
  if (name == "QSA" || name == "qsa") return System::kQSA;
  if (name == "QSOS" || name == "qsos") return System::kQSOS;
  throw ParseError(0, 0, "unknown proof system '" + name + "'");
}

Polynomial Certificate::expanded_q() const {
  switch (system) {
    case System::kQNS:
      return Polynomial::zero();
    case System::kQSA:
      return remainder;
    case System::kQSOS: {
      Polynomial q;
      for (const Polynomial& s : squares) q += s * s;
      return q;
    }
  }
  return Polynomial::zero();
}

int existential_occurrences(const Monomial& m, const Prefix& prefix,
                            bool with_multiplicity) {
  int count = 0;
  for (const auto& [v, e] : m.factors()) {
    if (prefix.is_existential(v.base())) count += with_multiplicity ? e : 1;
  }
  return count;
}

int existential_qdeg(const Polynomial& p, const Prefix& prefix,
                     bool with_multiplicity) {
  int result = 0;
  for (const auto& [m, c] : p.terms()) {
    result = std::max(result,
                      existential_occurrences(m, prefix, with_multiplicity));
  }
  return result;
}

namespace {

Polynomial one_minus_2u(VarId u) {
  Polynomial p = Polynomial::one();
  p.add_term(Monomial::of(base_var(u)), Rational(-2));
  return p;
}

void check_side_conditions(const Qbf& qbf, const Certificate& cert) {
  for (const auto& [u, qu] : cert.universal) {
    if (!qbf.prefix.contains(u) || !qbf.prefix.is_universal(u)) {
      throw SideConditionViolated(
          u, u, "q_u key x" + std::to_string(u) + " is not a universal variable");
    }
    for (const ExtVar& v : qu.vars()) {
      if (!qbf.prefix.contains(v.base()) ||
          !qbf.prefix.left_of(v.base(), u)) {
        throw SideConditionViolated(
            u, v.base(),
            "q_u for x" + std::to_string(u) + " mentions x" +
                std::to_string(v.base()) + ", which is not strictly left of it");
      }
    }
  }
}

void check_shape(const Certificate& cert) {
  switch (cert.system) {
    case System::kQNS:
      if (!cert.remainder.is_zero() || !cert.squares.empty()) {
        throw RemainderShapeViolated("QNS certificates carry no remainder");
      }
      break;
    case System::kQSA:
      if (!cert.squares.empty()) {
        throw RemainderShapeViolated("QSA certificates carry no squares list");
      }
      for (const auto& [m, c] : cert.remainder.terms()) {
        if (c < 0) {
          throw RemainderShapeViolated(
              "negative remainder coefficient " + to_string(c) + " on " +
              Polynomial(m, Rational(1)).to_string());
        }
      }
      break;
    case System::kQSOS:
      if (!cert.remainder.is_zero()) {
        throw RemainderShapeViolated(
            "QSOS certificates represent q as a squares list");
      }
      break;
  }
}

}  // namespace

Measures verify(const Qbf& qbf, const Certificate& cert) {
  check_side_conditions(qbf, cert);
  check_shape(cert);

  Measures measures;
  Polynomial total;

  for (const auto& [id, q] : cert.multipliers) {
    Polynomial product = q * axiom_poly(qbf, id);  // validates the id
    measures.size += q.monomial_count();
    if (!product.is_zero()) measures.degree = std::max(measures.degree, product.degree());
    total += product;
  }
  for (const auto& [u, qu] : cert.universal) {
    Polynomial product = qu * one_minus_2u(u);
    measures.size += qu.monomial_count();
    measures.qsize += qu.monomial_count();
    measures.qdeg = std::max(measures.qdeg, existential_qdeg(qu, qbf.prefix));
    if (!product.is_zero()) measures.degree = std::max(measures.degree, product.degree());
    total += product;
  }

  Polynomial q = cert.expanded_q();
  switch (cert.system) {
    case System::kQNS:
      break;
    case System::kQSA:
      measures.size += cert.remainder.monomial_count();
      break;
    case System::kQSOS:
      for (const Polynomial& s : cert.squares) measures.size += s.monomial_count();
      break;
  }
  if (!q.is_zero()) measures.degree = std::max(measures.degree, q.degree());
  total += q;
  total += Polynomial::one();

  if (!total.is_zero()) {
    throw IdentityViolated("certificate identity violated; residual " +
                               total.to_string(),
                           total.to_string());
  }
  return measures;
}

Certificate restrict_certificate(const Qbf& qbf, const Certificate& cert,
                                 VarId x, bool b) {
  verify(qbf, cert);
  if (!qbf.prefix.contains(x) || !qbf.prefix.is_existential(x)) {
    throw NotExistential("x" + std::to_string(x) +
                         " is not an existential prefix variable");
  }
  RestrictedQbf restricted = restrict_qbf_with_map(qbf, x, b);

  Certificate result;
  result.system = cert.system;
  for (const auto& [id, q] : cert.multipliers) {
    Polynomial rq = q.restrict(x, b);
    if (rq.is_zero()) continue;
    switch (id.kind) {
      case AxiomId::Kind::kClause: {
        // Satisfied clauses vanish together with their multipliers since
        // M(C)|_{x=b} = 0.
        auto mapped = restricted.clause_map[id.value];
        if (!mapped.has_value()) continue;
        result.multipliers[AxiomId::clause(static_cast<int>(*mapped))] += rq;
        break;
      }
      case AxiomId::Kind::kBool:
      case AxiomId::Kind::kTwin:
        if (id.value == x) continue;  // the restricted axiom is identically 0
        result.multipliers[id] += rq;
        break;
    }
  }
  for (auto it = result.multipliers.begin(); it != result.multipliers.end();) {
    it = it->second.is_zero() ? result.multipliers.erase(it) : std::next(it);
  }
  for (const auto& [u, qu] : cert.universal) {
    Polynomial rq = qu.restrict(x, b);
    if (!rq.is_zero()) result.universal[u] = rq;
  }
  result.remainder = cert.remainder.restrict(x, b);
  for (const Polynomial& s : cert.squares) {
    Polynomial rs = s.restrict(x, b);
    if (!rs.is_zero()) result.squares.push_back(rs);
  }

  verify(restricted.qbf, result);
  return result;
}

std::vector<Integer> four_squares(const Integer& n) {
  if (n < 0) throw Error("four_squares needs a nonnegative integer");
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  for (Integer s1 = root; s1 >= 0; --s1) {
    Integer r1 = n - s1 * s1;
    Integer root1;
    mpz_sqrt(root1.get_mpz_t(), r1.get_mpz_t());
    for (Integer s2 = std::min(s1, root1); s2 >= 0; --s2) {
      Integer r2 = r1 - s2 * s2;
      Integer root2;
      mpz_sqrt(root2.get_mpz_t(), r2.get_mpz_t());
      for (Integer s3 = std::min(s2, root2); s3 >= 0; --s3) {
        Integer r3 = r2 - s3 * s3;
        Integer s4;
        mpz_sqrt(s4.get_mpz_t(), r3.get_mpz_t());
        if (s4 <= s3 && s4 * s4 == r3) {
          return {s1, s2, s3, s4};
        }
      }
    }
  }
  throw Error("four-square search failed");  // unreachable by Lagrange
}

Certificate qsa_to_qsos(const Certificate& cert) {
  if (cert.system != System::kQSA) {
    throw NotQSA("qsa_to_qsos expects a QSA certificate");
  }
  Certificate result;
  result.system = System::kQSOS;
  result.multipliers = cert.multipliers;
  result.universal = cert.universal;

  for (const auto& [m, coefficient] : cert.remainder.terms()) {
    if (coefficient < 0) {
      throw NotQSA("negative remainder coefficient");
    }
    // Lift every variable occurrence of m so the term becomes c * m^2.
    Monomial current = m;
    for (const auto& [v, e] : m.factors()) {
      for (int step = 0; step < e; ++step) {
        Monomial stub;
        current.divide(Monomial::of(v), &stub);
        // c*cur = c*cur*v - c*(cur/v)*(v^2 - v); for a twin factor the
        // square axiom rewrites through the base pair:
        // ~v^2 - ~v = (v^2 - v) + (~v - v)(v + ~v - 1).
        Polynomial correction(stub, coefficient);
        if (!v.is_twin()) {
          result.multipliers[AxiomId::bool_axiom(v.base())] -= correction;
        } else {
          result.multipliers[AxiomId::bool_axiom(v.base())] -= correction;
          Polynomial twin_diff = Polynomial::variable(twin_var(v.base())) -
                                 Polynomial::variable(base_var(v.base()));
          result.multipliers[AxiomId::twin_axiom(v.base())] -=
              correction * twin_diff;
        }
        current = current.times(v);
      }
    }
    // current == m^2; write c*m^2 as a sum of at most four squares.
    Integer a = coefficient.get_num();
    Integer b = coefficient.get_den();
    for (const Integer& s : four_squares(a * b)) {
      if (s == 0) continue;
      Rational scale(s, b);
      scale.canonicalize();
      result.squares.push_back(Polynomial(m, scale));
    }
  }
  for (auto it = result.multipliers.begin(); it != result.multipliers.end();) {
    it = it->second.is_zero() ? result.multipliers.erase(it) : std::next(it);
  }
  return result;
}

Certificate qsos_to_qsa(const Qbf& qbf, const Certificate& cert, int max_vars) {
  if (cert.system != System::kQSOS) {
    throw NotQSOS("qsos_to_qsa expects a QSOS certificate");
  }
  if (qbf.prefix.size() > static_cast<std::size_t>(max_vars)) {
    throw TooLarge("pointwise expansion capped at " + std::to_string(max_vars) +
                   " variables");
  }
  Polynomial q = cert.expanded_q();

  Polynomial pointwise;
  std::vector<VarId> vars;
  for (const auto& [quant, v] : qbf.prefix.entries()) vars.push_back(v);
  Assignment alpha;
  std::size_t n = vars.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) alpha[vars[i]] = (mask >> i) & 1;
    Rational value = q.evaluate(alpha);
    if (value != 0) pointwise.add_term(indicator(alpha), value);
  }

  Certificate result;
  result.system = System::kQSA;
  result.multipliers = cert.multipliers;
  result.universal = cert.universal;
  result.remainder = pointwise;

  // q - pointwise vanishes on every twin-consistent Boolean point, so it
  // lives in the Boolean/twin part of the ideal.
  Polynomial difference = q - pointwise;
  if (!difference.is_zero()) {
    for (const auto& [id, mult] : express_in_ideal(difference, qbf)) {
      result.multipliers[id] += mult;
    }
    for (auto it = result.multipliers.begin(); it != result.multipliers.end();) {
      it = it->second.is_zero() ? result.multipliers.erase(it) : std::next(it);
    }
  }
  return result;
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::pair<std::string, std::string> split_colon(const std::string& line,
                                                int lineno) {
  auto pos = line.find(':');
  if (pos == std::string::npos) {
    throw ParseError(lineno, 1, "expected '<head> : <polynomial>'");
  }
  return {line.substr(0, pos), line.substr(pos + 1)};
}

}  // namespace

Certificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_header = false;
  Certificate cert;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    std::istringstream probe(line);
    std::string head;
    if (!(probe >> head)) continue;
    if (!saw_header) {
      std::string sys;
      if (head != "qcert" || !(probe >> sys)) {
        throw ParseError(lineno, 1, "expected header 'qcert <QNS|QSA|QSOS>'");
      }
      cert.system = parse_system(sys);
      saw_header = true;
      continue;
    }
    auto [lhs, rhs] = split_colon(line, lineno);
    std::istringstream ls(lhs);
    ls >> head;
    try {
      if (head == "p") {
        std::string kind;
        int value;
        if (!(ls >> kind >> value)) {
          throw ParseError(lineno, 1, "expected 'p <clause|bool|twin> <id>'");
        }
        AxiomId id = kind == "clause" ? AxiomId::clause(value)
                     : kind == "bool" ? AxiomId::bool_axiom(value)
                     : kind == "twin"
                         ? AxiomId::twin_axiom(value)
                         : throw ParseError(lineno, 1, "unknown axiom kind '" + kind + "'");
        cert.multipliers[id] += Polynomial::parse(rhs);
      } else if (head == "u") {
        int v;
        if (!(ls >> v)) throw ParseError(lineno, 1, "expected 'u <var>'");
        cert.universal[v] += Polynomial::parse(rhs);
      } else if (head == "r") {
        cert.remainder += Polynomial::parse(rhs);
      } else if (head == "s") {
        cert.squares.push_back(Polynomial::parse(rhs));
      } else {
        throw ParseError(lineno, 1, "unknown line head '" + head + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError(lineno, e.column, e.what());
    }
  }
  if (!saw_header) throw ParseError(lineno, 1, "missing 'qcert' header");
  return cert;
}

Certificate read_certificate_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_certificate(buf.str());
}

std::string write_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "qcert " << system_name(cert.system) << "\n";
  for (const auto& [id, q] : cert.multipliers) {
    out << "p " << id.to_string() << " : " << q.to_string() << "\n";
  }
  for (const auto& [u, qu] : cert.universal) {
    out << "u " << u << " : " << qu.to_string() << "\n";
  }
  if (!cert.remainder.is_zero()) {
    out << "r : " << cert.remainder.to_string() << "\n";
  }
  for (const Polynomial& s : cert.squares) {
    out << "s : " << s.to_string() << "\n";
  }
  return out.str();
}

}  // namespace qalg
