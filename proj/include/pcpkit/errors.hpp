#pragma once

#include <stdexcept>
#include <string>

namespace pcpkit {

enum class ErrorKind {
  kInvalidInput,
  kDegenerateInput,
  kBudgetExhausted,
  kRefinementFailure,
  kParse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::kInvalidInput, what) {}
};

class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& what)
      : Error(ErrorKind::kDegenerateInput, what) {}
};

class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(const std::string& what)
      : Error(ErrorKind::kBudgetExhausted, what) {}
};

class RefinementFailure : public Error {
 public:
  explicit RefinementFailure(const std::string& what)
      : Error(ErrorKind::kRefinementFailure, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ErrorKind::kParse, what) {}
};

}  // namespace pcpkit
