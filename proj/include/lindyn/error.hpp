#pragma once

#include <stdexcept>
#include <string>

namespace lindyn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two operands live in different sequence spaces.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

/// A weight was requested past the end of a table that has no tail rule.
class WeightIndexError : public Error {
 public:
  using Error::Error;
};

/// A start vector does not satisfy the extraction preconditions.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace lindyn
