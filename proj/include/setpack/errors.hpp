#pragma once

#include <stdexcept>
#include <string>

namespace setpack {

// Caller handed us something malformed (bad arguments, broken invariants).
class InvalidInputError : public std::runtime_error {
 public:
  explicit InvalidInputError(const std::string& what) : std::runtime_error(what) {}
};

// Rejected instance file; line numbers are 1-based.
class ParseError : public InvalidInputError {
 public:
  ParseError(const std::string& what, int line)
      : InvalidInputError(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// A requested configuration is outside what this build supports.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or search ran out of its allotted budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace setpack
