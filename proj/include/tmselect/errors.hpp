#pragma once

#include <stdexcept>
#include <string>

namespace tmselect {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public Error {
public:
  using Error::Error;
};

class LineCountMismatch : public Error {
public:
  using Error::Error;
};

class BothEmpty : public Error {
public:
  using Error::Error;
};

class EmptyQuery : public Error {
public:
  using Error::Error;
};

class InvalidParams : public Error {
public:
  using Error::Error;
};

class EmptyPool : public Error {
public:
  using Error::Error;
};

class UnknownId : public Error {
public:
  using Error::Error;
};

class AlreadySelected : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  using Error::Error;
};

class InvalidDims : public Error {
public:
  using Error::Error;
};

class EmptyReference : public Error {
public:
  using Error::Error;
};

class EmptyExamples : public Error {
public:
  using Error::Error;
};

/// Thrown when a property check finds a counterexample; carries the witness.
class ViolationFound : public Error {
public:
  ViolationFound(const std::string& msg, double slack)
      : Error(msg), slack_(slack) {}
  double slack() const { return slack_; }

private:
  double slack_;
};

}  // namespace tmselect
