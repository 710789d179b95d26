#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lsd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model or configuration parameters outside their admissible range.
class InvalidModel : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (e.g. a pole of the integrand).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The Stieltjes fixed point did not settle, even after the damped retry.
class NonConvergence : public Error {
 public:
  NonConvergence(double x, std::complex<double> last, double step, double residual);

  double x() const noexcept { return x_; }
  std::complex<double> last_iterate() const noexcept { return last_; }
  double last_step() const noexcept { return step_; }
  double residual() const noexcept { return residual_; }

 private:
  double x_;
  std::complex<double> last_;
  double step_;
  double residual_;
};

/// No sign change of g' on a support search interval.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Eigenvalues of a sample fall outside the grid of the density curve.
class GridCoverageError : public Error {
 public:
  using Error::Error;
};

/// Symmetric QL iteration failed to deflate an eigenvalue.
class EigenNoConvergence : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant (e.g. a clearly negative density).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lsd
