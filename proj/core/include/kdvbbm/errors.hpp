#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kdvbbm {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Mismatched sample counts or grids between operands.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A cutoff frequency outside the band representable on the grid.
class InvalidCutoff : public Error {
 public:
  using Error::Error;
};

/// A spectral datum that the grid cannot represent faithfully.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Requested Sobolev index is outside the range an estimate is valid for.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A quadrature did not reach its requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

/// Non-finite state encountered while time stepping.
class DivergenceError : public Error {
 public:
  DivergenceError(std::size_t step, double time, std::size_t component = 0);

  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return time_; }
  /// Index of the first non-finite component of a coupled state.
  std::size_t component() const noexcept { return component_; }

 private:
  std::size_t step_;
  double time_;
  std::size_t component_;
};

/// Fixed-point iteration failed to reach the requested tolerance.
class ContractionFailure : public Error {
 public:
  ContractionFailure(int iterations, double last_defect);

  int iterations() const noexcept { return iterations_; }
  double last_defect() const noexcept { return last_defect_; }

 private:
  int iterations_;
  double last_defect_;
};

}  // namespace kdvbbm
