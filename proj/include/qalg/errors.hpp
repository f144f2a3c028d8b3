#pragma once

#include <stdexcept>
#include <string>

namespace qalg {

// Base class for all library errors. Every failure mode of the checkers,
// translators and searchers is a distinct type so callers can map them to
// exit codes without string matching.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

class TautologyError : public Error {
 public:
  explicit TautologyError(const std::string& what) : Error(what) {}
};

class UndeclaredVariable : public Error {
 public:
  explicit UndeclaredVariable(const std::string& what) : Error(what) {}
};

class UnassignedVariable : public Error {
 public:
  explicit UnassignedVariable(const std::string& what) : Error(what) {}
};

class InvalidAxiomId : public Error {
 public:
  explicit InvalidAxiomId(const std::string& what) : Error(what) {}
};

class NotExistential : public Error {
 public:
  explicit NotExistential(const std::string& what) : Error(what) {}
};

class InvalidSize : public Error {
 public:
  explicit InvalidSize(const std::string& what) : Error(what) {}
};

class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& what) : Error(what) {}
};

class NotInIdeal : public Error {
 public:
  explicit NotInIdeal(const std::string& what) : Error(what) {}
};

class IdentityViolated : public Error {
 public:
  IdentityViolated(const std::string& what, std::string residual)
      : Error(what), residual(std::move(residual)) {}
  // Text form of the nonzero residual polynomial.
  std::string residual;
};

class SideConditionViolated : public Error {
 public:
  SideConditionViolated(int universal, int offending, const std::string& what)
      : Error(what), universal(universal), offending(offending) {}
  int universal;
  int offending;
};

class RemainderShapeViolated : public Error {
 public:
  explicit RemainderShapeViolated(const std::string& what) : Error(what) {}
};

class NotQSA : public Error {
 public:
  explicit NotQSA(const std::string& what) : Error(what) {}
};

class NotQSOS : public Error {
 public:
  explicit NotQSOS(const std::string& what) : Error(what) {}
};

class NotWinning : public Error {
 public:
  explicit NotWinning(const std::string& what) : Error(what) {}
};

class NotWinningEval : public Error {
 public:
  explicit NotWinningEval(const std::string& what) : Error(what) {}
};

class HypothesisViolated : public Error {
 public:
  explicit HypothesisViolated(const std::string& what) : Error(what) {}
};

class InvalidStep : public Error {
 public:
  InvalidStep(std::size_t index, const std::string& reason)
      : Error("invalid step " + std::to_string(index) + ": " + reason),
        index(index) {}
  std::size_t index;
};

class FinalConfigViolation : public Error {
 public:
  explicit FinalConfigViolation(const std::string& what) : Error(what) {}
};

class NotRefuted : public Error {
 public:
  explicit NotRefuted(const std::string& what) : Error(what) {}
};

class NotNormalizable : public Error {
 public:
  explicit NotNormalizable(const std::string& what) : Error(what) {}
};

class QdegTooHigh : public Error {
 public:
  explicit QdegTooHigh(const std::string& what) : Error(what) {}
};

}  // namespace qalg
