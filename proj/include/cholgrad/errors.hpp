#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cholgrad {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes are incompatible (non-square where square is required,
// mismatched inner dimensions, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument is outside its admissible range (block size 0, n < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A NaN or Inf was found in an input, or would have been produced.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// The matrix was left partially overwritten by a failed in-place
// factorization and must not be used as an input again.
class InvalidMatrixError : public Error {
 public:
  using Error::Error;
};

// Forward sensitivities supplied in full storage are not symmetric.
class AsymmetryError : public Error {
 public:
  using Error::Error;
};

// A dense O(n^4)-memory oracle was requested for a matrix that is too large.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

// Indices carried by the errors below are 1-based, following LAPACK's INFO.

class SingularTriangularError : public Error {
 public:
  explicit SingularTriangularError(std::size_t index);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// The factor handed to a derivative routine has a zero on its diagonal.
class SingularFactorError : public Error {
 public:
  explicit SingularFactorError(std::size_t index);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// The leading minor of order column() is not positive.
class NotPositiveDefiniteError : public Error {
 public:
  explicit NotPositiveDefiniteError(std::size_t column);
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

}  // namespace cholgrad
