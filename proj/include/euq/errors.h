/// @file errors.h
/// Exception types shared by the library and mapped onto CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace euq {

/// Base class for all library errors. Carries the process exit code the CLI
/// reports when the error escapes a command.
class Error : public std::runtime_error {
 public:
  Error(const std::string& msg, int exit_code)
      : std::runtime_error(msg), exit_code_(exit_code) {}

  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// Malformed or inconsistent input (bad probabilities, dimension mismatch,
/// unknown measure, missing files).
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg, 2) {}
};

/// A numerical invariant failed (e.g. a measure far below zero, an oracle
/// disagreement).
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& msg) : Error(msg, 3) {}
};

/// Exhaustive enumeration requested beyond the configured class-count cap.
class EnumerationLimitError : public Error {
 public:
  explicit EnumerationLimitError(const std::string& msg) : Error(msg, 4) {}
};

/// A brute-force oracle cannot answer at its resolution or size limit.
class OracleError : public Error {
 public:
  explicit OracleError(const std::string& msg) : Error(msg, 3) {}
};

}  // namespace euq
