#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nfsm {

/// Malformed or inconsistent input (instance files, matchings, capacity deltas).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input that does not conform to one of the file formats; carries the
/// 1-based line number of the offending line (0 when the problem is global).
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& message)
      : ValidationError(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A search exceeded its node budget. Budgets are node counts, never wall time.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t nodes)
      : std::runtime_error(what + " (budget exceeded after " + std::to_string(nodes) + " nodes)"),
        nodes_(nodes) {}

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  std::uint64_t nodes_;
};

/// A guarantee of the underlying theory did not hold. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nfsm
