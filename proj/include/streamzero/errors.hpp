#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace streamzero {

/// Base of every domain error. `kind()` is a stable machine-readable name.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define STREAMZERO_ERROR(Name)                                              \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& message) : Error(#Name, message) {}    \
  }

STREAMZERO_ERROR(NonSummable);
STREAMZERO_ERROR(InsufficientWindow);
STREAMZERO_ERROR(NotCoprime);
STREAMZERO_ERROR(RootIsolationFailure);
STREAMZERO_ERROR(Indeterminate);
STREAMZERO_ERROR(NotHyperbolic);
STREAMZERO_ERROR(UnsupportedConstantTerm);
STREAMZERO_ERROR(BranchOutOfRange);
STREAMZERO_ERROR(NotAnOrbit);
STREAMZERO_ERROR(NotAdmissible);
STREAMZERO_ERROR(WindowTooShort);
STREAMZERO_ERROR(NotUnimodular);
STREAMZERO_ERROR(InconsistentWindow);
STREAMZERO_ERROR(RepeatedRoots);
STREAMZERO_ERROR(RationalInput);
STREAMZERO_ERROR(SquareD);
STREAMZERO_ERROR(UnsupportedDegree);
STREAMZERO_ERROR(NegativeDiscriminant);
STREAMZERO_ERROR(ZeroPolynomial);
STREAMZERO_ERROR(ExactnessUnavailable);
STREAMZERO_ERROR(SearchTooLarge);
STREAMZERO_ERROR(Overflow);

#undef STREAMZERO_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position, const std::string& input)
      : Error("ParseError", message + " at position " + std::to_string(position) + " in '" + input + "'"),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace streamzero
