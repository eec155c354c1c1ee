// Exception types shared across the toolkit. Input and validation problems
// are reported by throwing; prover verdicts are ordinary return values.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cplkit {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Frame construction rejected a relation with a directed cycle.
struct CyclicError : Error {
  std::vector<std::string> cycle;  // w0 -> w1 -> ... -> w0
  CyclicError(const std::string& what, std::vector<std::string> cyc)
      : Error(what), cycle(std::move(cyc)) {}
};

struct UnknownWorldError : Error {
  using Error::Error;
};

// Positioned syntax error (1-based line/column; 0 when unknown).
struct ParseError : Error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& what, int l, int c) : Error(what), line(l), col(c) {}
};

struct RangeRestrictionError : ParseError {
  using ParseError::ParseError;
};

struct EmptyDomainError : Error {
  using Error::Error;
};

struct UnstratifiableError : Error {
  std::string rule;  // offending rule, source form
  UnstratifiableError(const std::string& what, std::string r) : Error(what), rule(std::move(r)) {}
};

struct TooManyStrataError : Error {
  std::string rule;
  TooManyStrataError(const std::string& what, std::string r) : Error(what), rule(std::move(r)) {}
};

// An atom name used with a polarity other than its declared one.
struct PolarityClashError : Error {
  using Error::Error;
};

// A proposition fell outside the atoms/bot/implication fragment.
struct FragmentError : Error {
  using Error::Error;
};

struct SideConditionError : Error {
  using Error::Error;
};

struct OrderError : Error {
  using Error::Error;
};

struct UnsupportedShapeError : Error {
  using Error::Error;
};

// A search exceeded its step budget; callers treat this as a failure,
// never as a verdict.
struct BudgetExceededError : Error {
  using Error::Error;
};

// Substitution below the cut world hit a reflection node whose witness set
// changed in a way that needs a fresh de-tethered certificate.
struct SubstitutionIncompleteError : Error {
  using Error::Error;
};

struct InvariantError : Error {
  using Error::Error;
};

}  // namespace cplkit
