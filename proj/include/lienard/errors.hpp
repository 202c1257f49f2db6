#pragma once

#include <stdexcept>
#include <string>

namespace lienard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unsupported input (bad JSON, unsupported ScalarFn variant,
/// non-finite argument).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A constructor or check was called outside its domain. `condition` names the
/// hypothesis or requirement that failed, e.g. "C" or "G(x1) < G(x2)".
class PreconditionError : public Error {
 public:
  PreconditionError(std::string condition, const std::string& what)
      : Error(what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// Integration or root-finding broke down (step underflow, divergence,
/// exhausted retries).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lienard
