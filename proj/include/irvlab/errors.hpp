#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace irvlab {

// Base for every error the library raises on bad input or failed domain
// preconditions. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidLengthError : public Error {
 public:
  using Error::Error;
};

class NoWinnerError : public Error {
 public:
  using Error::Error;
};

// Raised when a scripted tie-break policy runs out of choices or names a
// candidate outside the tie. Carries the tie so callers can branch on it.
class PolicyError : public Error {
 public:
  PolicyError(const std::string& what, std::vector<int> tie_among)
      : Error(what), tie_among_(std::move(tie_among)) {}
  const std::vector<int>& tie_among() const { return tie_among_; }

 private:
  std::vector<int> tie_among_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class FeasibilityError : public Error {
 public:
  using Error::Error;
};

// A constructor produced a profile that failed its own engine check.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class FetchError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace irvlab
