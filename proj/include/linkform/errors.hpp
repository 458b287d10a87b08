#pragma once

#include <stdexcept>
#include <string>

namespace linkform {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Malformed textual input (CLI exit code 2).
class ParseError : public Error {
  public:
    using Error::Error;
};

// A mathematical precondition does not hold (CLI exit code 3).
// `reason` is a short machine-readable tag such as "degenerate_form".
class MathError : public Error {
  public:
    MathError(std::string reason, const std::string& what)
        : Error(what), reason_(std::move(reason)) {}
    const std::string& reason() const { return reason_; }

  private:
    std::string reason_;
};

// Two computations that must agree did not (CLI exit code 4).
class IdentityViolation : public Error {
  public:
    using Error::Error;
};

}  // namespace linkform
