#pragma once

#include <stdexcept>

namespace seqcontract {

// Malformed input: bad instance, contract, coverage function or parameter.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive procedure would exceed its configured enumeration budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seqcontract
