#pragma once

#include <stdexcept>

namespace dyntdd {

// Violated precondition or invariant: a bug in the caller, not bad input.
struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

// Rejected scenario or file input; the message names the field and the
// constraint it broke.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dyntdd
