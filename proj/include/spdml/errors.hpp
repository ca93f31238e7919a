#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace spdml {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// Raised when a matrix that must be SPD is not. Carries the offending
/// minimum eigenvalue and, for dataset input, the sample index.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(double lambda_min, std::optional<std::size_t> index = std::nullopt);

  double lambda_min() const noexcept { return lambda_min_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  double lambda_min_;
  std::optional<std::size_t> index_;
};

class EigenSolverFailure : public Error {
 public:
  using Error::Error;
};

/// A scalar function was evaluated outside its domain (e.g. log of a
/// non-positive eigenvalue) or its result left the representable range.
class DomainError : public Error {
 public:
  using Error::Error;
};

class MatrixOverflow : public Error {
 public:
  using Error::Error;
};

class MaxIterExceeded : public Error {
 public:
  MaxIterExceeded(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The centered Gram matrix vanished, so the alignment is undefined.
class DegenerateGram : public Error {
 public:
  using Error::Error;
};

class StepUnderflow : public Error {
 public:
  using Error::Error;
};

class InvalidDataset : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdml
