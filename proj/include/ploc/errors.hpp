#pragma once

#include <stdexcept>
#include <string>

namespace ploc {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A word was fed to a product/conjugation outside the domain oracle.
struct DomainViolation : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

struct InvalidMorphism : Error {
  using Error::Error;
};

struct NotASubgroup : Error {
  using Error::Error;
};

struct NotAGroup : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct InvalidTwistingPair : Error {
  using Error::Error;
};

struct NoLiftExists : Error {
  using Error::Error;
};

struct DegreeOutOfRange : Error {
  using Error::Error;
};

struct EmptyDelta : Error {
  using Error::Error;
};

struct DeltaNotClosed : Error {
  using Error::Error;
};

struct SylowConditionFails : Error {
  using Error::Error;
};

struct NoCompatibleSylow : Error {
  using Error::Error;
};

struct PreconditionNotMet : Error {
  using Error::Error;
};

struct SearchFailed : Error {
  using Error::Error;
};

struct AxiomsFailed : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line = 0;
  ParseError(const std::string& what, int line_) : Error(what + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

}  // namespace ploc
