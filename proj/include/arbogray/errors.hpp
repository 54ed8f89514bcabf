#ifndef ARBOGRAY_ERRORS_HPP
#define ARBOGRAY_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace arbogray {

// Error categories, aligned with the CLI exit codes:
// 1 malformed input, 2 precondition refused, 3 budget exceeded,
// 4 internal inconsistency.
enum class ErrorCode {
  Ok = 0,
  MalformedInput = 1,
  PreconditionRefused = 2,
  BudgetExceeded = 3,
  InternalInconsistency = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Malformed graph/path input; remembers the offending line when known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg)
      : Error(ErrorCode::MalformedInput, msg), line_(0) {}
  ParseError(int line, const std::string& msg)
      : Error(ErrorCode::MalformedInput,
              "line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// An operation's stated precondition does not hold for the given input.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& msg)
      : Error(ErrorCode::PreconditionRefused, msg) {}
};

// An exhaustive search or enumeration exceeded its configured budget.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& msg)
      : Error(ErrorCode::BudgetExceeded, msg) {}
};

// A situation the construction guarantees impossible was observed.
// Carries the recursion's provenance trace for diagnosis; if this ever
// fires the input is a counterexample or the code has a bug.
class InternalInconsistencyError : public Error {
 public:
  InternalInconsistencyError(const std::string& msg,
                             std::vector<std::string> provenance = {})
      : Error(ErrorCode::InternalInconsistency, msg),
        provenance_(std::move(provenance)) {}
  const std::vector<std::string>& provenance() const { return provenance_; }

 private:
  std::vector<std::string> provenance_;
};

}  // namespace arbogray

#endif  // ARBOGRAY_ERRORS_HPP
