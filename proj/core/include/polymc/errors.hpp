#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polymc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (graph files, records).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid input: asymmetric adjacency, self-loops, bad parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or state-space guard was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A polymer model broke a weight condition the sampler depends on.
class InvalidModelError : public Error {
 public:
  using Error::Error;
};

/// A randomized generator ran out of rejection attempts.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// The sample mean of an estimator collapsed to zero.
class DegenerateEstimateError : public Error {
 public:
  using Error::Error;
};

}  // namespace polymc
