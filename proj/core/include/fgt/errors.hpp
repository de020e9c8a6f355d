#pragma once

#include <stdexcept>
#include <string>

namespace fgt {

// Error taxonomy mirrored by the CLI exit codes: validation failures exit 2,
// size-guard refusals exit 3, mathematical precondition failures exit 4.

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fgt
