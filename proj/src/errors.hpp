#pragma once

#include <stdexcept>
#include <string>

namespace bsm {

// Bad input: malformed problem data, mismatched sizes, unknown identifiers.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Singular low-order blocks, NaN/Inf in an iterate, and similar breakdowns.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bsm
