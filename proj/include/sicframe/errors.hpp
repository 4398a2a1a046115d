#pragma once

#include <stdexcept>
#include <string>

namespace sicframe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A vector that should be unit length is not, beyond tolerance.
class NormError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// Requested a frame potential order other than t = 1, 2.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Vector set does not contain exactly N^2 members.
class CountError : public Error {
 public:
  using Error::Error;
};

/// No closed form is known for the requested (space, dimension) pair.
class NotTabulatedError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSubspaceError : public Error {
 public:
  using Error::Error;
};

}  // namespace sicframe
