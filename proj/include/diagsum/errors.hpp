#pragma once

#include <stdexcept>
#include <string>

namespace diagsum {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exponent outside [1, inf], or a nonpositive s.
class InvalidExponentError : public Error {
 public:
  using Error::Error;
};

/// Parameters fall outside every regime of the closed-form bounds.
/// The message names the violated precondition.
class OutOfRegimeError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Dense storage or enumeration guard exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOracleError : public Error {
 public:
  using Error::Error;
};

class DegenerateFormError : public Error {
 public:
  using Error::Error;
};

class InvalidFitError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace diagsum
