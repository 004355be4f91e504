#pragma once

#include <stdexcept>
#include <string>

namespace mzi {

// Base for every error raised by the library. Callers that only need to
// report a failure can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// 1 + S_x cos(beta) vanishes: the post-selected path weights are 0/0.
class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class IndistinguishableStates : public Error {
 public:
  using Error::Error;
};

class SingleHypothesis : public Error {
 public:
  using Error::Error;
};

class WrongStateKind : public Error {
 public:
  using Error::Error;
};

class UndefinedVisibility : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace mzi
