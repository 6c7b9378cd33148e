#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

/// Input that violates an operation's precondition (bad orientation, gcd != 1, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance. The message carries the diagnostic.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace reeb
