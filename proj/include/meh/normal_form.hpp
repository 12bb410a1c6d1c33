#pragma once

#include <cstddef>
#include <vector>

#include "meh/matrix.hpp"

namespace meh {

/// Row index of the first non-zero entry of column j, or rows() + j when the
/// column is zero. Indices are 0-based, so any value >= rows() means "none".
std::size_t pivot_row(const Matrix& a, std::size_t j);

/// Every non-zero column has its pivot strictly above the pivots of all
/// non-zero columns to its right. Zero columns (gaps) are allowed anywhere.
bool is_lower_triangular_with_gaps(const Matrix& a);

struct EchelonColumnForm {
  Matrix H;  // M * V
  Matrix V;  // invertible
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;  // increasing; H(pivot_rows[k], k) == 1
};

/// Gaussian column elimination over the rationals. Row pivot_rows[k] of H is
/// the unit vector e_k, every other row is zero beyond the pivots found above
/// it, and columns rank.. are zero.
EchelonColumnForm reduced_echelon_column_form(const Matrix& m);

struct HermiteForm {
  Matrix H;  // M * U
  Matrix U;  // integer, |det| = 1
};

/// Column-style Hermite normal form using only unimodular integer column
/// operations, so rational inputs are allowed. Each row either opens the next
/// pivot column or is left alone; the Euclidean step picks the entry of
/// smallest magnitude (lowest column on ties) and the pivot is made positive
/// before the entries left of it are reduced into [0, pivot).
HermiteForm hermite_normal_form(const Matrix& m);

/// Non-zero columns form a prefix, their pivot rows strictly increase, pivots
/// are positive and each pivot row is reduced: 0 <= h(p_j, k) < h(p_j, j)
/// for k < j.
bool is_hermite_normal_form(const Matrix& h);

/// Block shape
///   ( E   0  0  )
///   ( E'  0  H' )
/// with E the r x r identity over the first r of the n1 rational columns and
/// H' (rows r.., integer columns) in Hermite normal form.
bool is_mehnf(const Matrix& h, std::size_t n1, std::size_t r);

/// Invertible, zero lower-left n2 x n1 block, integral lower-right block with
/// determinant +-1.
bool is_mctm(const Matrix& v, std::size_t n1, std::size_t n2);

}  // namespace meh
