#pragma once

#include <stdexcept>
#include <string>

namespace gerbeforge {

/// Malformed or inconsistent input data (bad table, non-cocycle, non-normal subgroup).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal verification failed (tolerance breach, identity violated).
class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gerbeforge
