#include "cholgrad/errors.hpp"

namespace cholgrad {

SingularTriangularError::SingularTriangularError(std::size_t index)
    : Error("triangular matrix has a zero diagonal entry at index " +
            std::to_string(index)),
      index_(index) {}

SingularFactorError::SingularFactorError(std::size_t index)
    : Error("Cholesky factor has a zero diagonal entry at index " +
            std::to_string(index)),
      index_(index) {}

NotPositiveDefiniteError::NotPositiveDefiniteError(std::size_t column)
    : Error("matrix is not positive definite (failure at column " +
            std::to_string(column) + ")"),
      column_(column) {}

}  // namespace cholgrad
