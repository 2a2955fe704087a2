// errors.hpp: exception types shared by the library and the CLI.

#pragma once

#include <stdexcept>
#include <string>

namespace abelcs {

/// An input violates the documented precondition of an operation
/// (wrong shape, singular where nonsingular is required, odd diagonal, ...).
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed matrix file, preset string, or command-line value.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration would visit more terms than the caller allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace abelcs
