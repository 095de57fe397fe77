#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellgraph {

// Base of every failure caused by input data or domain preconditions. The CLI
// maps these to exit code 2; anything else escaping is a bug.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or unrecognised CSV header.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A row rejected while parsing in strict mode.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

// Statistic is mathematically undefined for the input (zero variance, ...).
class UndefinedStatistic : public Error {
 public:
  using Error::Error;
};

// Violated precondition on an argument value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace cellgraph
