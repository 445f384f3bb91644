#pragma once

#include <stdexcept>
#include <string>

namespace focklab {

// Root of every error the numerical core raises. The C API maps each
// concrete type onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x <= 0 for
// log_gamma, c <= -1, malformed coefficient data, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A density that is genuinely +infinity at the requested point, e.g. the
// |z|^{2c} factor at z = 0 when c < 0.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Result not representable in double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Quadratic form, moment matrix or homogeneous polynomial failed a
// positive-definiteness check.
class NotPositiveDefiniteError : public Error {
 public:
  using Error::Error;
};

// Root bracketing, series or quadrature did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Least-squares decay fit could not be formed (too few usable points).
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace focklab
