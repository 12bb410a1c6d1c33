#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "meh/rational.hpp"

namespace meh {

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError() : std::runtime_error("matrix is singular") {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense row-major matrix of exact rationals. Column operations are first-class
// because every transformation in this library is a sequence of them.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Rational> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Rational> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vector row_vector(std::size_t i) const;
  Vector column(std::size_t j) const;

  void append_row(std::span<const Rational> values);
  void insert_row(std::size_t pos, std::span<const Rational> values);
  void erase_row(std::size_t pos);
  void erase_last_row();
  void swap_rows(std::size_t a, std::size_t b);

  void swap_columns(std::size_t a, std::size_t b);
  void negate_column(std::size_t j);
  void scale_column(std::size_t j, const Rational& factor);
  /// column dst += factor * column src
  void add_column_multiple(std::size_t dst, std::size_t src, const Rational& factor);

  bool is_zero_column(std::size_t j) const;
  bool is_zero_row(std::size_t i) const;
  bool is_zero_column_block(std::size_t j, std::size_t row_begin, std::size_t row_end) const;

  Matrix transpose() const;
  Matrix block(std::size_t row_begin, std::size_t row_end, std::size_t col_begin,
               std::size_t col_end) const;
  Matrix select_rows(std::span<const std::size_t> indices) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const Rational> x);
/// row^T * M
Vector row_times(std::span<const Rational> row, const Matrix& m);

std::size_t rank(const Matrix& m);
Rational determinant(const Matrix& m);
/// Exact Gauss-Jordan inverse. Throws SingularMatrixError.
Matrix invert(const Matrix& m);

/// Text fixture format: first line `m n`, then m lines of n rationals.
Matrix read_matrix(std::istream& in);
std::string format_matrix(const Matrix& m);
std::ostream& operator<<(std::ostream& out, const Matrix& m);

}  // namespace meh
