#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cholgrad {

// Non-owning view of a row-major block with leading dimension ld (the
// distance between consecutive rows). Views of a parent matrix alias its
// storage, so writes through a MatrixView land in the parent.
class ConstMatrixView {
 public:
  ConstMatrixView() = default;
  ConstMatrixView(const double* data, std::size_t rows, std::size_t cols,
                  std::size_t ld)
      : data_(data), rows_(rows), cols_(cols), ld_(ld) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t ld() const noexcept { return ld_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  const double& operator()(std::size_t i, std::size_t j) const {
    return data_[i * ld_ + j];
  }
  const double* row(std::size_t i) const { return data_ + i * ld_; }

  ConstMatrixView block(std::size_t r0, std::size_t c0, std::size_t nr,
                        std::size_t nc) const {
    if (nr == 0 || nc == 0) return {nullptr, nr, nc, ld_};
    return {data_ + r0 * ld_ + c0, nr, nc, ld_};
  }

 private:
  const double* data_ = nullptr;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t ld_ = 0;
};

class MatrixView {
 public:
  MatrixView() = default;
  MatrixView(double* data, std::size_t rows, std::size_t cols, std::size_t ld)
      : data_(data), rows_(rows), cols_(cols), ld_(ld) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t ld() const noexcept { return ld_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) const {
    return data_[i * ld_ + j];
  }
  double* row(std::size_t i) const { return data_ + i * ld_; }

  MatrixView block(std::size_t r0, std::size_t c0, std::size_t nr,
                   std::size_t nc) const {
    if (nr == 0 || nc == 0) return {nullptr, nr, nc, ld_};
    return {data_ + r0 * ld_ + c0, nr, nc, ld_};
  }

  operator ConstMatrixView() const { return {data_, rows_, cols_, ld_}; }

 private:
  double* data_ = nullptr;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t ld_ = 0;
};

// Dense row-major matrix of doubles.
//
// A matrix carries a validity flag. In-place factorizations that fail part
// way through clear it, and every public operation refuses invalid inputs.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Row-by-row literal; all rows must have the same length.
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_row_major(std::size_t rows, std::size_t cols,
                               std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const double& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  MatrixView view() noexcept { return {data_.data(), rows_, cols_, cols_}; }
  ConstMatrixView view() const noexcept {
    return {data_.data(), rows_, cols_, cols_};
  }

  bool valid() const noexcept { return valid_; }
  void invalidate() noexcept { valid_ = false; }

  Matrix transpose() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double scale) noexcept;

  // Element-wise equality of shape and values (NaN compares unequal).
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  bool valid_ = true;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double scale, Matrix a);

// Largest absolute entry; 0 for an empty matrix.
double max_abs(const Matrix& a);
// Largest absolute entry of the lower triangle (diagonal included).
double max_abs_lower(const Matrix& a);

// Input guards shared by the public operations.
void require_valid(const Matrix& a, const char* what);
void require_square(const Matrix& a, const char* what);
void require_same_shape(const Matrix& a, const Matrix& b, const char* what);
void require_finite(const Matrix& a, const char* what);
void require_finite_lower(const Matrix& a, const char* what);

}  // namespace cholgrad
