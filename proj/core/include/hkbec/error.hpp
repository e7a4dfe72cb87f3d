#pragma once

#include <stdexcept>
#include <string>

namespace hkbec {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An integral or series that was asked for does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not reach its requested accuracy.
class ToleranceError : public Error {
 public:
  using Error::Error;
};

/// Inputs are valid but outside the physical regime the operation models.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// A truncated sum hit its configured term cap before certifying its tail.
class CapError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

}  // namespace detail
}  // namespace hkbec
