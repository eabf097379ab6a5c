#ifndef HYPERVOLT_ERROR_HPP
#define HYPERVOLT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hypervolt {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violated by the caller (bad exponent, bad grid, Re p <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input lies on (or within tolerance of) a pole: Gamma at a nonpositive
// integer, a vanishing resolvent denominator, an inversion node on a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Malformed external input (sample files, CLI values).
class InputError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical procedure did not reach its target.  `estimate` carries the
// best error estimate achieved, when one exists.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what, double estimate = -1.0)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

// Intermediate values left the double range (e.g. inversion at tiny t).
class OverflowError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

}  // namespace hypervolt

#endif  // HYPERVOLT_ERROR_HPP
