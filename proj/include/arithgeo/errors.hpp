#pragma once

#include <stdexcept>
#include <string>

namespace arithgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unknown input (unknown atom, unknown identity name, bad prime).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain (n = 0, non-invertible f(1)).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds an enumeration budget or oracle cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

class LocalFinitenessError : public Error {
 public:
  using Error::Error;
};

/// Point counts whose Moebius inversion is not a nonnegative integer.
class InvalidCountsError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace arithgeo
