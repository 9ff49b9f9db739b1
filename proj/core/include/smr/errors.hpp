#pragma once

#include <stdexcept>
#include <string>

namespace smr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Forced edges sharing an endpoint: no matching can honor them.
class StructuralInfeasibility : public Error {
 public:
  using Error::Error;
};

class SizeGuardExceeded : public Error {
 public:
  SizeGuardExceeded(const std::string& what, double estimate)
      : Error(what + " (estimated state space " + std::to_string(estimate) + ")"),
        estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

}  // namespace smr
