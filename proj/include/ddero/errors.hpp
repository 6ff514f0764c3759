#pragma once

#include <stdexcept>
#include <string>

namespace ddero {

// Base class for every failure raised by the library. Mathematical negatives
// (no solution, not exact, ...) and input errors are distinguished by type so
// the CLI can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mathematical negatives.
class MathError : public Error {
 public:
  using Error::Error;
};

class ParameterDegreeOverflow : public MathError {
 public:
  ParameterDegreeOverflow()
      : MathError("product of two parameter-carrying coefficients") {}
};

class NoSolution : public MathError {
 public:
  using MathError::MathError;
  NoSolution() : MathError("linear system is inconsistent") {}
};

class NotExactDifference : public MathError {
 public:
  using MathError::MathError;
};

class NoDilationSymmetry : public MathError {
 public:
  using MathError::MathError;
};

class NonpositiveWeights : public MathError {
 public:
  using MathError::MathError;
};

class NotUniform : public MathError {
 public:
  using MathError::MathError;
};

class InfiniteBasis : public MathError {
 public:
  using MathError::MathError;
};

class NonlocalDepthExceeded : public MathError {
 public:
  NonlocalDepthExceeded()
      : MathError("composition of two nonlocal terms is not supported") {}
};

class EmptyCandidate : public MathError {
 public:
  using MathError::MathError;
};

class Underdetermined : public MathError {
 public:
  using MathError::MathError;
};

class NonPolynomial : public MathError {
 public:
  using MathError::MathError;
};

// Input errors (bad syntax, undeclared names, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, int line, int column)
      : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " +
                   msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class UndeclaredVariable : public ParseError {
 public:
  UndeclaredVariable(const std::string& name, int line, int column)
      : ParseError("undeclared variable '" + name + "'", line, column) {}
};

class NonPolynomialRHS : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace ddero
