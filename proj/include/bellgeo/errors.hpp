#pragma once

#include <stdexcept>
#include <string>

namespace bellgeo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario, configuration or argument (CLI exit code 2).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Enumeration would exceed the configured size cap.
class CapExceeded : public InvalidArgument {
 public:
  CapExceeded(const std::string& what, long double required)
      : InvalidArgument(what), required_(required) {}
  long double required() const { return required_; }

 private:
  long double required_;
};

/// A solver or iterative routine failed to certify its answer (CLI exit code 3).
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace bellgeo
