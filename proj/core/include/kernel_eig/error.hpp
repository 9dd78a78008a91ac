#pragma once

#include <stdexcept>
#include <string>

namespace kernel_eig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (sizes, coupling constants, files).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two diagonal energies closer than the configured gap.
class DegenerateSpectrumError : public InputError {
 public:
  using InputError::InputError;
};

/// The kernel was asked for a value at (or numerically on) one of its poles.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& what, double pole = 0.0)
      : Error(what), pole_(pole) {}
  double pole() const noexcept { return pole_; }

 private:
  double pole_;
};

/// The literal path sum failed its ratio test.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// An iterative solve ran out of iterations or lost its bracket.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double lo, double hi, double residual)
      : Error(what), lo_(lo), hi_(hi), residual_(residual) {}
  double lower() const noexcept { return lo_; }
  double upper() const noexcept { return hi_; }
  double residual() const noexcept { return residual_; }

 private:
  double lo_;
  double hi_;
  double residual_;
};

}  // namespace kernel_eig
