#pragma once

#include <stdexcept>
#include <string>

namespace bcqp {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed problem file; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& msg)
      : Error("parse error at line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A domain-type invariant does not hold (dimension mismatch etc.).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// No admissible structured pivot candidate remains in a block; signals
// rank deficiency of the constraint matrix.
class StructurallySingularError : public Error {
 public:
  using Error::Error;
};

// A selected pivot block has zero determinant.
class SingularPivotError : public Error {
 public:
  using Error::Error;
};

// The working matrix has an entirely zero pivot column.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A diagonal block of a factorization is singular during substitution.
class SingularBlockError : public Error {
 public:
  using Error::Error;
};

}  // namespace bcqp
