#include "qalg/extract.hpp"

#include <algorithm>

#include "qalg/errors.hpp"

namespace qalg {

std::size_t PtfCountermodel::size() const {
  std::size_t total = 0;
  for (const auto& [u, p] : thresholds) total += p.monomial_count();
  return total;
}

int PtfCountermodel::degree() const {
  int result = 0;
  for (const auto& [u, p] : thresholds) result = std::max(result, p.degree());
  return result;
}

bool PtfCountermodel::play(VarId u, const Assignment& alpha) const {
  auto it = thresholds.find(u);
  // A universal variable without a threshold polynomial plays sign(0) = +1,
  // i.e. the value 0.
  Rational value = it == thresholds.end() ? Rational(0) : it->second.evaluate(alpha);
  return value < 0;  // (1 - sign)/2 with sign(0) = +1
}

PtfCountermodel extract(const Qbf& qbf, const Certificate& cert) {
  verify(qbf, cert);
  PtfCountermodel model;
  model.thresholds = cert.universal;
  return model;
}

namespace {

bool matrix_falsified(const Qbf& qbf, const Assignment& alpha) {
  for (const Clause& c : qbf.clauses) {
    if (!c.satisfied_by(alpha)) return true;
  }
  return false;
}

}  // namespace

CountermodelCheck validate_countermodel(const Qbf& qbf,
                                        const PtfCountermodel& model,
                                        int max_exist_vars) {
  std::vector<VarId> existentials = qbf.prefix.existentials();
  if (existentials.size() > static_cast<std::size_t>(max_exist_vars)) {
    throw TooLarge("countermodel validation capped at " +
                   std::to_string(max_exist_vars) + " existential variables");
  }
  for (const auto& [u, p] : model.thresholds) {
    if (!qbf.prefix.contains(u) || !qbf.prefix.is_universal(u)) {
      throw SideConditionViolated(u, u,
                                  "threshold key x" + std::to_string(u) +
                                      " is not a universal variable");
    }
    for (const ExtVar& v : p.vars()) {
      if (!qbf.prefix.contains(v.base()) || !qbf.prefix.left_of(v.base(), u)) {
        throw SideConditionViolated(u, v.base(),
                                    "threshold polynomial for x" +
                                        std::to_string(u) + " reads x" +
                                        std::to_string(v.base()));
      }
    }
  }

  const std::size_t n = existentials.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Assignment alpha;
    for (std::size_t i = 0; i < n; ++i) alpha[existentials[i]] = (mask >> i) & 1;
    // Universal values are filled in prefix order so later thresholds may
    // read earlier universal moves.
    Assignment play;
    for (const auto& [q, v] : qbf.prefix.entries()) {
      play[v] = q == Quantifier::kForall ? model.play(v, play) : alpha[v];
    }
    if (!matrix_falsified(qbf, play)) {
      return CountermodelCheck{false, play};
    }
  }
  return CountermodelCheck{true, std::nullopt};
}

std::vector<bool> ptf_truth_table(const Qbf& qbf, const PtfCountermodel& model,
                                  VarId u, int max_left_vars) {
  std::size_t position = qbf.prefix.position(u);
  if (position > static_cast<std::size_t>(max_left_vars)) {
    throw TooLarge("truth table capped at " + std::to_string(max_left_vars) +
                   " left variables");
  }
  std::vector<bool> table(std::size_t{1} << position);
  for (std::size_t index = 0; index < table.size(); ++index) {
    Assignment alpha;
    for (std::size_t i = 0; i < position; ++i) {
      alpha[qbf.prefix.entries()[i].second] = (index >> i) & 1;
    }
    table[index] = model.play(u, alpha);
  }
  return table;
}

}  // namespace qalg
