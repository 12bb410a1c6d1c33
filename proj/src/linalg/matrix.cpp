#include "meh/matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace meh {

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(0, cols);
  for (const Vector& r : rows) m.append_row(r);
  return m;
}

Vector Matrix::row_vector(std::size_t i) const {
  auto r = row(i);
  return Vector(r.begin(), r.end());
}

Vector Matrix::column(std::size_t j) const {
  Vector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

void Matrix::append_row(std::span<const Rational> values) {
  if (values.size() != cols_) throw DimensionMismatch("append_row: wrong row length");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void Matrix::insert_row(std::size_t pos, std::span<const Rational> values) {
  if (values.size() != cols_) throw DimensionMismatch("insert_row: wrong row length");
  if (pos > rows_) throw std::out_of_range("insert_row: position out of range");
  data_.insert(data_.begin() + static_cast<std::ptrdiff_t>(pos * cols_), values.begin(),
               values.end());
  ++rows_;
}

void Matrix::erase_row(std::size_t pos) {
  if (pos >= rows_) throw std::out_of_range("erase_row: position out of range");
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(pos * cols_);
  data_.erase(first, first + static_cast<std::ptrdiff_t>(cols_));
  --rows_;
}

void Matrix::erase_last_row() { erase_row(rows_ - 1); }

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void Matrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void Matrix::negate_column(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) {
    Rational& x = (*this)(i, j);
    x = -x;
  }
}

void Matrix::scale_column(std::size_t j, const Rational& factor) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) *= factor;
}

void Matrix::add_column_multiple(std::size_t dst, std::size_t src, const Rational& factor) {
  if (sgn(factor) == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) {
    const Rational& s = (*this)(i, src);
    if (sgn(s) != 0) (*this)(i, dst) += factor * s;
  }
}

bool Matrix::is_zero_column(std::size_t j) const { return is_zero_column_block(j, 0, rows_); }

bool Matrix::is_zero_column_block(std::size_t j, std::size_t row_begin,
                                  std::size_t row_end) const {
  for (std::size_t i = row_begin; i < row_end; ++i) {
    if (sgn((*this)(i, j)) != 0) return false;
  }
  return true;
}

bool Matrix::is_zero_row(std::size_t i) const { return is_zero(row(i)); }

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::block(std::size_t row_begin, std::size_t row_end, std::size_t col_begin,
                     std::size_t col_end) const {
  Matrix b(row_end - row_begin, col_end - col_begin);
  for (std::size_t i = row_begin; i < row_end; ++i)
    for (std::size_t j = col_begin; j < col_end; ++j) b(i - row_begin, j - col_begin) = (*this)(i, j);
  return b;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(0, cols_);
  for (std::size_t i : indices) out.append_row(row(i));
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) != 0) c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

Vector operator*(const Matrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector product: dimension mismatch");
  Vector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

Vector row_times(std::span<const Rational> row, const Matrix& m) {
  if (row.size() != m.rows()) throw DimensionMismatch("row-matrix product: dimension mismatch");
  Vector out(m.cols());
  for (std::size_t k = 0; k < m.rows(); ++k) {
    if (sgn(row[k]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(k, j)) != 0) out[j] += row[k] * m(k, j);
    }
  }
  return out;
}

namespace {

// Row-echelon reduction in place; returns the rank and accumulates the
// determinant sign/scale for square inputs.
std::size_t eliminate(Matrix& m, Rational* det) {
  std::size_t r = 0;
  if (det) *det = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) {
      if (det) *det = 0;
      continue;
    }
    if (p != r) {
      m.swap_rows(p, r);
      if (det) *det = -*det;
    }
    const Rational pivot = m(r, c);
    if (det) *det *= pivot;
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / pivot;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return eliminate(work, nullptr);
}

Rational determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  Matrix work = m;
  Rational det;
  std::size_t r = eliminate(work, &det);
  return r == m.rows() ? det : Rational(0);
}

Matrix invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a(p, c)) == 0) ++p;
    if (p == n) throw SingularMatrixError();
    a.swap_rows(p, c);
    inv.swap_rows(p, c);
    const Rational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(a(c, j)) != 0) a(i, j) -= f * a(c, j);
        if (sgn(inv(c, j)) != 0) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Matrix read_matrix(std::istream& in) {
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw RationalParseError("matrix header `m n` with non-negative sizes expected");
  }
  const auto m = static_cast<std::size_t>(rows), n = static_cast<std::size_t>(cols);
  Matrix out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::string token;
      if (!(in >> token)) {
        throw RationalParseError("matrix truncated at row " + std::to_string(i + 1));
      }
      out(i, j) = parse_rational(token);
    }
  }
  return out;
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  out << m;
  return out.str();
}

std::ostream& operator<<(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << to_string(m(i, j));
    }
    out << '\n';
  }
  return out;
}

}  // namespace meh
