#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flagres {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

enum class EvalErrorKind { DivisionByZero, BranchCut, DenominatorVanishes, Overflow, UnboundVariable };

const char* to_string(EvalErrorKind kind) noexcept;

class EvalError : public Error {
public:
  EvalError(EvalErrorKind kind, const std::string& msg) : Error(msg), kind_(kind) {}
  EvalErrorKind kind() const noexcept { return kind_; }

private:
  EvalErrorKind kind_;
};

/// Input outside the polynomial fragment (or not analytic at the requested point).
class NonPolynomialError : public Error {
public:
  using Error::Error;
};

class AmbientMismatch : public Error {
public:
  AmbientMismatch() : Error("polynomials live over different variable lists") {}
};

/// Algebraic precondition failures: ideal not finite at a point, step budget exhausted, ...
class AlgebraError : public Error {
public:
  using Error::Error;
};

/// A computation that the library deliberately does not attempt for the given input.
class Unsupported : public Error {
public:
  using Error::Error;
};

class SchemaError : public Error {
public:
  using Error::Error;
};

}  // namespace flagres
