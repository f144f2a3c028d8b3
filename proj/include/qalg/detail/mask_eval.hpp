#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qalg/errors.hpp"
#include "qalg/poly.hpp"
#include "qalg/qbf.hpp"

namespace qalg::detail {

// Exhaustive sweeps over total assignments index variables by prefix
// position and represent assignments as bitmasks (bit i = value of the
// i-th prefix variable). Polynomials and clauses compile to mask tests so
// the inner loops stay cheap.
class MaskEvaluator {
 public:
  explicit MaskEvaluator(const Prefix& prefix) : prefix_(prefix) {
    if (prefix.size() > 63) {
      throw TooLarge("mask evaluation supports at most 63 variables");
    }
    for (const auto& [q, v] : prefix.entries()) {
      bits_[v] = static_cast<std::uint64_t>(1) << bit_count_++;
    }
  }

  std::size_t var_count() const { return bit_count_; }
  std::uint64_t bit(VarId v) const { return bits_.at(v); }

  struct Term {
    std::uint64_t need_one = 0;   // plain factors: base must be 1
    std::uint64_t need_zero = 0;  // twin factors: base must be 0
    Rational coefficient;
  };

  struct Poly {
    std::vector<Term> terms;
    Rational evaluate(std::uint64_t mask) const {
      Rational total(0);
      for (const Term& t : terms) {
        if ((mask & t.need_one) == t.need_one && (mask & t.need_zero) == 0) {
          total += t.coefficient;
        }
      }
      return total;
    }
  };

  Poly compile(const Polynomial& p) const {
    Poly result;
    for (const auto& [m, c] : p.terms()) {
      Term t;
      t.coefficient = c;
      for (const auto& [v, e] : m.factors()) {
        (v.is_twin() ? t.need_zero : t.need_one) |= bit(v.base());
      }
      result.terms.push_back(std::move(t));
    }
    return result;
  }

  struct ClauseMask {
    std::uint64_t pos = 0;  // satisfied when any of these bits is 1
    std::uint64_t neg = 0;  // satisfied when any of these bits is 0
  };

  ClauseMask compile(const Clause& c) const {
    ClauseMask mask;
    for (const Literal& l : c.literals()) {
      (l.negated ? mask.neg : mask.pos) |= bit(l.var);
    }
    return mask;
  }

  static bool satisfied(const ClauseMask& c, std::uint64_t mask) {
    return (mask & c.pos) != 0 || (~mask & c.neg) != 0;
  }

  Assignment to_assignment(std::uint64_t mask) const {
    Assignment alpha;
    for (const auto& [v, bit] : bits_) alpha[v] = (mask & bit) != 0;
    return alpha;
  }

 private:
  const Prefix& prefix_;
  std::map<VarId, std::uint64_t> bits_;
  int bit_count_ = 0;
};

}  // namespace qalg::detail
