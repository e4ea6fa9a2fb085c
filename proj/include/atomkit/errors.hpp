#pragma once

#include <stdexcept>
#include <string>

namespace atomkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arrows whose codomain and domain do not line up.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// Values from two different base categories were mixed.
class BackendError : public Error {
 public:
  using Error::Error;
};

/// Malformed object, arrow, or input document.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A presheaf fragment lacks an object that an operation needs.
class ClosureError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace atomkit
