#include "meh/normal_form.hpp"

#include <algorithm>

namespace meh {

std::size_t pivot_row(const Matrix& a, std::size_t j) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (sgn(a(i, j)) != 0) return i;
  }
  return a.rows() + j;
}

bool is_lower_triangular_with_gaps(const Matrix& a) {
  const std::size_t m = a.rows();
  std::size_t last = 0;
  bool seen = false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const std::size_t p = pivot_row(a, j);
    if (p >= m) continue;
    if (seen && p <= last) return false;
    last = p;
    seen = true;
  }
  return true;
}

EchelonColumnForm reduced_echelon_column_form(const Matrix& m) {
  EchelonColumnForm out{m, Matrix::identity(m.cols()), 0, {}};
  Matrix& h = out.H;
  Matrix& v = out.V;
  std::size_t r = 0;
  for (std::size_t i = 0; i < h.rows() && r < h.cols(); ++i) {
    std::size_t c = r;
    while (c < h.cols() && sgn(h(i, c)) == 0) ++c;
    if (c == h.cols()) continue;
    h.swap_columns(c, r);
    v.swap_columns(c, r);
    const Rational inv = 1 / h(i, r);
    h.scale_column(r, inv);
    v.scale_column(r, inv);
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (j == r || sgn(h(i, j)) == 0) continue;
      const Rational f = -h(i, j);
      h.add_column_multiple(j, r, f);
      v.add_column_multiple(j, r, f);
    }
    out.pivot_rows.push_back(i);
    ++r;
  }
  out.rank = r;
  return out;
}

HermiteForm hermite_normal_form(const Matrix& m) {
  HermiteForm out{m, Matrix::identity(m.cols())};
  Matrix& h = out.H;
  Matrix& u = out.U;
  const std::size_t n = h.cols();
  std::size_t c = 0;
  for (std::size_t i = 0; i < h.rows() && c < n; ++i) {
    // Euclid on row i restricted to columns c..n-1.
    for (;;) {
      std::size_t smallest = n;
      std::size_t nonzero = 0;
      for (std::size_t j = c; j < n; ++j) {
        if (sgn(h(i, j)) == 0) continue;
        ++nonzero;
        if (smallest == n || abs(h(i, j)) < abs(h(i, smallest))) smallest = j;
      }
      if (nonzero <= 1) {
        if (nonzero == 1) {
          h.swap_columns(smallest, c);
          u.swap_columns(smallest, c);
        }
        break;
      }
      for (std::size_t j = c; j < n; ++j) {
        if (j == smallest || sgn(h(i, j)) == 0) continue;
        const Rational q(floor_of(h(i, j) / h(i, smallest)));
        h.add_column_multiple(j, smallest, -q);
        u.add_column_multiple(j, smallest, -q);
      }
    }
    if (sgn(h(i, c)) == 0) continue;
    if (sgn(h(i, c)) < 0) {
      h.negate_column(c);
      u.negate_column(c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      const Rational q(floor_of(h(i, j) / h(i, c)));
      if (sgn(q) == 0) continue;
      h.add_column_multiple(j, c, -q);
      u.add_column_multiple(j, c, -q);
    }
    ++c;
  }
  return out;
}

bool is_hermite_normal_form(const Matrix& h) {
  const std::size_t m = h.rows();
  std::size_t q = 0;
  while (q < h.cols() && !h.is_zero_column(q)) ++q;
  for (std::size_t j = q; j < h.cols(); ++j) {
    if (!h.is_zero_column(j)) return false;
  }
  std::size_t last = 0;
  for (std::size_t j = 0; j < q; ++j) {
    const std::size_t p = pivot_row(h, j);
    if (p >= m) return false;
    if (j > 0 && p <= last) return false;
    last = p;
    const Rational& pivot = h(p, j);
    if (sgn(pivot) <= 0) return false;
    for (std::size_t k = 0; k < j; ++k) {
      if (sgn(h(p, k)) < 0 || h(p, k) >= pivot) return false;
    }
  }
  return true;
}

bool is_mehnf(const Matrix& h, std::size_t n1, std::size_t r) {
  const std::size_t m = h.rows();
  const std::size_t n = h.cols();
  if (n1 > n || r > n1 || r > m) return false;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational expected = (i == j) ? 1 : 0;
      if (h(i, j) != expected) return false;
    }
  }
  for (std::size_t j = r; j < n1; ++j) {
    if (!h.is_zero_column_block(j, r, m)) return false;
  }
  return is_hermite_normal_form(h.block(r, m, n1, n));
}

bool is_mctm(const Matrix& v, std::size_t n1, std::size_t n2) {
  const std::size_t n = n1 + n2;
  if (v.rows() != n || v.cols() != n) return false;
  for (std::size_t i = n1; i < n; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      if (sgn(v(i, j)) != 0) return false;
    }
    for (std::size_t j = n1; j < n; ++j) {
      if (!is_integral(v(i, j))) return false;
    }
  }
  const Rational det_int = determinant(v.block(n1, n, n1, n));
  if (abs(det_int) != 1) return false;
  return rank(v.block(0, n1, 0, n1)) == n1;
}

}  // namespace meh
