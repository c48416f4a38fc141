#ifndef IRG_ERRORS_HPP
#define IRG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace irg {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad file syntax, unknown names, invariant violations.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

// Mismatched dimensions between a strategy/point and a game/polynomial.
class DimensionError : public InputError {
 public:
  explicit DimensionError(const std::string& what) : InputError(what) {}
};

// Belief/expected-utility queries at an info set with zero reach/frequency.
class UnreachedInfoSetError : public Error {
 public:
  explicit UnreachedInfoSetError(const std::string& what) : Error(what) {}
};

// A node or iteration budget was exceeded.
class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(what) {}
};

}  // namespace irg

#endif  // IRG_ERRORS_HPP
