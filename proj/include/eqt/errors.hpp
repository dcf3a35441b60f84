#pragma once

#include <stdexcept>
#include <string>

namespace eqt {

// Malformed or inconsistent input (bad dimensions, counts, non-equilibrium endpoints).
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// State space too large for the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance outside what a solver supports (e.g. -inf payoffs in the LP pipeline).
class UnsupportedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked postcondition failed; indicates a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class GenerationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eqt
