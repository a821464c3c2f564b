#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wedge {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs outside the admissible domain of an operation (bad angles, r <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Admittance with negative real part (the boundary would create energy).
class PassivityViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A kernel or closed form was evaluated on top of one of its poles.
class SingularEvaluation : public Error {
 public:
  using Error::Error;
};

/// A guarded denominator of the impedance coefficients vanished.
class DegenerateParameter : public Error {
 public:
  DegenerateParameter(std::string factor, double magnitude)
      : Error("degenerate parameter: |" + factor + "| = " + std::to_string(magnitude) +
              " is below the degeneracy threshold"),
        factor_(std::move(factor)) {}

  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

}  // namespace wedge
