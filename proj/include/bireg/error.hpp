#pragma once

#include <stdexcept>
#include <string>

namespace bireg {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid construction parameters (grid bounds, counts, schedules).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input outside the set an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A bifunction could not be evaluated, or produced a non-finite value.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, double x, double y)
      : Error(what), x_(x), y_(y) {}
  explicit EvaluationError(const std::string& what) : Error(what) {}

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

 private:
  double x_ = 0.0;
  double y_ = 0.0;
};

// Caller asked for something the operation does not support.
class UsageError : public Error {
 public:
  using Error::Error;
};

// DSL parse failure; position is a byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : Error("syntax error at " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Random instance generation gave up after its retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace bireg
