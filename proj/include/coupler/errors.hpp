#pragma once

#include <stdexcept>
#include <string>

namespace coupler {

// Every failure surfaced by the library derives from Error so callers (the CLI
// in particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Out-of-range or malformed values (negative squeeze parameter, NaN coupling).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Configurations outside the supported model (nonzero phase mismatch,
// analytic solution requested off its manifold, unsupported oracle subsystem).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

// Scenario document could not be parsed. Carries line/key context.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, std::string key)
      : Error(format(what, line, key)), line_(line), key_(std::move(key)) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  static std::string format(const std::string& what, int line, const std::string& key) {
    std::string msg = "line " + std::to_string(line);
    if (!key.empty()) msg += " (" + key + ")";
    return msg + ": " + what;
  }

  int line_;
  std::string key_;
};

// Numerical breakdown: non-finite results, singular series, failed exponentials.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Fock-space truncation too small for the requested evolution.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace coupler
