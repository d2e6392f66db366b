#pragma once

#include <stdexcept>
#include <string>

namespace voa {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

// Raised when a substitution lands on a pole of a rational function.
struct CriticalSpecialization : Error {
  using Error::Error;
};

struct UnknownGenerator : Error {
  explicit UnknownGenerator(const std::string& name) : Error("unknown generator: " + name) {}
};

struct TableIncomplete : Error {
  using Error::Error;
};

struct Unsupported : Error {
  using Error::Error;
};

struct NotPositiveEnergy : Error {
  using Error::Error;
};

struct CriticalLevel : Error {
  CriticalLevel() : Error("level k = -3 is critical; use the critical realisation") {}
};

}  // namespace voa
