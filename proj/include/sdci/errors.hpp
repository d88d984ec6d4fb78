#pragma once

#include <stdexcept>
#include <string>

namespace sdci {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (p not in (0,1), |r| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value: psi out of range, bad grid dims, unknown family name.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class BracketError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Bad data handed to a procedure (non-finite estimate, length mismatch, zero cells).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sdci
