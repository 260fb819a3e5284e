#pragma once

#include <stdexcept>
#include <string>

namespace gcsa {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range user input (bad alignment, bad pattern, bad flag).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or inconsistent serialized data.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A broken internal invariant. Seeing one of these means a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// Index construction failed its self-check.
class BuildError : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace gcsa
