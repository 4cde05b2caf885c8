#pragma once

#include <stdexcept>
#include <string>

namespace restframe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A square-root radicand went negative (mass-shell or bound-state gap).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed, or a function could not be evaluated.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Raised whenever a single-particle subsystem is requested after the
/// rest-frame conditions have removed the particle factorization.
class RelativisticNonSeparability : public Error {
 public:
  explicit RelativisticNonSeparability(int which);
  int particle() const noexcept { return which_; }

 private:
  int which_;
};

}  // namespace restframe
