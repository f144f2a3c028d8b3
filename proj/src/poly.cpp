#include "qalg/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qalg/errors.hpp"

namespace qalg {

Monomial Monomial::of(ExtVar v, int exp) {
  Monomial m;
  if (exp > 0) m.factors_.push_back({v, exp});
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : factors_) d += e;
  return d;
}

int Monomial::exponent(ExtVar v) const {
  auto it = std::lower_bound(
      factors_.begin(), factors_.end(), v,
      [](const auto& entry, ExtVar key) { return entry.first < key; });
  if (it != factors_.end() && it->first == v) return it->second;
  return 0;
}

bool Monomial::contains_base(VarId v) const {
  return contains(base_var(v)) || contains(twin_var(v));
}

bool Monomial::multilinear_twin_free() const {
  for (const auto& [v, e] : factors_) {
    if (e > 1 || v.is_twin()) return false;
  }
  return true;
}

Monomial Monomial::times(const Monomial& other) const {
  Monomial result;
  result.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first < b->first) {
      result.factors_.push_back(*a++);
    } else if (b->first < a->first) {
      result.factors_.push_back(*b++);
    } else {
      result.factors_.push_back({a->first, a->second + b->second});
      ++a;
      ++b;
    }
  }
  result.factors_.insert(result.factors_.end(), a, factors_.end());
  result.factors_.insert(result.factors_.end(), b, other.factors_.end());
  return result;
}

Monomial Monomial::times(ExtVar v, int exp) const {
  return times(Monomial::of(v, exp));
}

bool Monomial::divide(const Monomial& divisor, Monomial* quotient) const {
  Monomial result;
  auto a = factors_.begin();
  for (const auto& [v, e] : divisor.factors_) {
    while (a != factors_.end() && a->first < v) result.factors_.push_back(*a++);
    if (a == factors_.end() || a->first != v || a->second < e) return false;
    if (a->second > e) result.factors_.push_back({a->first, a->second - e});
    ++a;
  }
  result.factors_.insert(result.factors_.end(), a, factors_.end());
  *quotient = std::move(result);
  return true;
}

Monomial Monomial::without(ExtVar v) const {
  Monomial result;
  for (const auto& entry : factors_) {
    if (entry.first != v) result.factors_.push_back(entry);
  }
  return result;
}

Monomial Monomial::without_base(VarId v) const {
  Monomial result;
  for (const auto& entry : factors_) {
    if (entry.first.base() != v) result.factors_.push_back(entry);
  }
  return result;
}

Rational Monomial::evaluate(const Assignment& alpha) const {
  for (const auto& [v, e] : factors_) {
    auto it = alpha.find(v.base());
    if (it == alpha.end()) {
      throw UnassignedVariable("variable x" + std::to_string(v.base()) +
                               " has no value");
    }
    bool value = v.is_twin() ? !it->second : it->second;
    if (!value) return Rational(0);
  }
  return Rational(1);
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  int da = degree();
  int db = other.degree();
  if (da != db) return da <=> db;
  return factors_ <=> other.factors_;
}

Polynomial::Polynomial(Rational constant) {
  if (constant != 0) terms_.emplace(Monomial::one(), std::move(constant));
}

Polynomial::Polynomial(Monomial m, Rational coefficient) {
  if (coefficient != 0) terms_.emplace(std::move(m), std::move(coefficient));
}

Polynomial Polynomial::variable(ExtVar v) {
  return Polynomial(Monomial::of(v), Rational(1));
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && terms_.begin()->first.is_one());
}

int Polynomial::degree() const {
  if (terms_.empty()) return 0;
  // Terms are graded-lex ordered, so the last one has maximal degree.
  return terms_.rbegin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<ExtVar> Polynomial::vars() const {
  std::set<ExtVar> result;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors()) result.insert(v);
  }
  return result;
}

std::set<VarId> Polynomial::base_vars() const {
  std::set<VarId> result;
  for (const auto& [m, c] : terms_) {
    for (const auto& [v, e] : m.factors()) result.insert(v.base());
  }
  return result;
}

bool Polynomial::mentions_base(VarId v) const {
  for (const auto& [m, c] : terms_) {
    if (m.contains_base(v)) return true;
  }
  return false;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial result;
  for (const auto& [m, c] : terms_) result.terms_.emplace(m, -c);
  return result;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial result(*this);
  result += other;
  return result;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial result(*this);
  result -= other;
  return result;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial result;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      result.add_term(ma.times(mb), ca * cb);
    }
  }
  return result;
}

Polynomial Polynomial::times(const Monomial& m) const {
  Polynomial result;
  for (const auto& [mm, c] : terms_) {
    result.terms_.emplace(mm.times(m), c);
  }
  return result;
}

Polynomial Polynomial::scale(const Rational& c) const {
  if (c == 0) return Polynomial();
  Polynomial result;
  for (const auto& [m, coef] : terms_) result.terms_.emplace(m, coef * c);
  return result;
}

Rational Polynomial::evaluate(const Assignment& alpha) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    if (m.evaluate(alpha) != 0) total += c;
  }
  return total;
}

Polynomial Polynomial::restrict(VarId v, bool b) const {
  Polynomial result;
  for (const auto& [m, c] : terms_) {
    int plain = m.exponent(base_var(v));
    int twin = m.exponent(twin_var(v));
    // v^e evaluates to b^e, ~v^e to (1-b)^e; the term survives iff no
    // vanishing factor is present.
    if (plain > 0 && !b) continue;
    if (twin > 0 && b) continue;
    result.add_term(m.without_base(v), c);
  }
  return result;
}

Polynomial Polynomial::substitute_base(VarId v, const Polynomial& p) const {
  Polynomial one_minus = Polynomial::one() - p;
  Polynomial result;
  for (const auto& [m, c] : terms_) {
    int plain = m.exponent(base_var(v));
    int twin = m.exponent(twin_var(v));
    Polynomial term(m.without_base(v), c);
    for (int i = 0; i < plain; ++i) term = term * p;
    for (int i = 0; i < twin; ++i) term = term * one_minus;
    result += term;
  }
  return result;
}

namespace {

// Recursive-descent parser for the polynomial text grammar.
class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : text_(text) {}

  Polynomial parse() {
    Polynomial result;
    skip_space();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      parse_term(sign, &result);
      skip_space();
      first = false;
    }
    if (first) fail("empty polynomial (use '0')");
    return result;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(1, static_cast<int>(pos_) + 1, msg);
  }

  Rational parse_number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    std::string num = text_.substr(start, pos_ - start);
    if (peek() == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (dstart == pos_) fail("expected a denominator");
      std::string den = text_.substr(dstart, pos_ - dstart);
      if (Integer(den) == 0) fail("zero denominator");
      Rational r(num + "/" + den);
      r.canonicalize();
      return r;
    }
    return Rational(num);
  }

  ExtVar parse_factor_var() {
    bool twin = false;
    if (peek() == '~') {
      twin = true;
      ++pos_;
    }
    if (peek() != 'x') fail("expected a variable factor 'x<k>'");
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a variable index");
    int id = std::stoi(text_.substr(start, pos_ - start));
    if (id < 1) fail("variable indices start at 1");
    return ExtVar(id, twin);
  }

  void parse_term(int sign, Polynomial* out) {
    Rational coefficient(sign);
    Monomial monomial;
    bool saw_anything = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coefficient *= parse_number();
      saw_anything = true;
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
      } else if (peek() == 'x' || peek() == '~') {
        fail("factors must be '*'-separated");
      }
    }
    while (peek() == 'x' || peek() == '~') {
      ExtVar v = parse_factor_var();
      int exp = 1;
      if (peek() == '^') {
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an exponent");
        exp = std::stoi(text_.substr(start, pos_ - start));
        if (exp < 1) fail("exponents must be positive");
      }
      monomial = monomial.times(v, exp);
      saw_anything = true;
      skip_space();
      if (peek() == '*') {
        ++pos_;
        skip_space();
        if (peek() != 'x' && peek() != '~' && !std::isdigit(static_cast<unsigned char>(peek())))
          fail("dangling '*'");
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
          coefficient *= parse_number();
          skip_space();
          if (peek() == '*') {
            ++pos_;
            skip_space();
          }
        }
      } else {
        break;
      }
    }
    if (!saw_anything) fail("expected a term");
    out->add_term(monomial, coefficient);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

std::string factor_to_string(ExtVar v, int exp) {
  std::string s = v.is_twin() ? "~x" : "x";
  s += std::to_string(v.base());
  if (exp > 1) s += "^" + std::to_string(exp);
  return s;
}

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
  return PolyParser(text).parse();
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  // Highest-degree terms first.
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational abs = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) out << "-";
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    bool need_coef = (abs != 1) || m.is_one();
    if (need_coef) out << qalg::to_string(abs);
    bool need_star = need_coef;
    for (const auto& [v, e] : m.factors()) {
      if (need_star) out << "*";
      out << factor_to_string(v, e);
      need_star = true;
    }
  }
  return out.str();
}

Monomial indicator(const Assignment& alpha) {
  Monomial m;
  for (const auto& [v, value] : alpha) {
    m = m.times(value ? base_var(v) : twin_var(v));
  }
  return m;
}

Polynomial ind_rho(const Assignment& rho) {
  Polynomial result = Polynomial::one();
  for (const auto& [v, value] : rho) {
    Polynomial factor = value ? Polynomial::variable(base_var(v))
                              : Polynomial::one() - Polynomial::variable(base_var(v));
    result = result * factor;
  }
  return result;
}

}  // namespace qalg
