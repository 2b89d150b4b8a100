#pragma once

#include <stdexcept>
#include <string>

namespace gsforge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands live over different alphabets or series contexts.
struct MismatchError : Error {
  using Error::Error;
};

// Malformed word strings, configs, register-machine programs.
struct ParseError : Error {
  using Error::Error;
};

// A configured resource cap was hit (monomial universe, enumeration size, ...).
struct CapError : Error {
  using Error::Error;
};

// Unreadable or incompatible checkpoint file.
struct CheckpointError : Error {
  using Error::Error;
};

}  // namespace gsforge
