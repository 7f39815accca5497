#pragma once

#include <stdexcept>
#include <string>

namespace hslab {

// Caller violated a precondition (mismatched family, bad parameter, missing inverse).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A codeword does not name a valid group element.
class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested operation is not defined for this group family.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An exact computation or search would exceed its configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hslab
