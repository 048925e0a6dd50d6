#pragma once

#include <stdexcept>
#include <string>

namespace gerrycircle {

// Bad caller input: out-of-range parameters, malformed files, guard limits.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric routine failed to meet its own accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace gerrycircle
