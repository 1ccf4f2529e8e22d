#ifndef CREDAL_ERRORS_HPP
#define CREDAL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace credal {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax errors from the sentence / constraint / script parsers.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position(position) {}
  std::size_t position;
};

// Empty polytope: inconsistent expansion, constraining, or entailment premise.
struct InfeasibleError : Error {
  using Error::Error;
};

// Conditioning (plain or extended) on evidence of probability zero.
struct NullEvidenceError : Error {
  using Error::Error;
};

// Violated operation precondition (Jeffrey weights, support containment, ...).
struct PreconditionError : Error {
  using Error::Error;
};

// Enumeration cap or budget exceeded.
struct CapError : Error {
  using Error::Error;
};

// Cross-entropy objective is +inf on the whole feasible region.
struct NoFiniteObjectiveError : Error {
  using Error::Error;
};

}  // namespace credal

#endif
