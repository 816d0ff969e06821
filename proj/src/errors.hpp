#pragma once

#include <stdexcept>
#include <string>

namespace lasso {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A divisor's leading coefficient (viewed over the program variables)
// contains unknowns; division would need a case split.
struct ParametricLeadingCoefficient : Error {
  using Error::Error;
};

// A parametric generator set falls outside the triangular solved form the
// Groebner layer supports.
struct ParametricInput : Error {
  using Error::Error;
};

// Division by a transition left primed variables behind; the determinism
// or denominator assumptions are violated.
struct ResidualPrimedVariable : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& msg, int line, int col)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

struct InputError : Error {
  using Error::Error;
};

struct ExecutionError : Error {
  ExecutionError(const std::string& msg, size_t step) : Error(msg), step(step) {}
  size_t step;
};

struct SolverFailure : Error {
  using Error::Error;
};

}  // namespace lasso
