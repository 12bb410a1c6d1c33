#include <algorithm>
#include <stdexcept>

#include "meh/mixed_solver.hpp"
#include "meh/normal_form.hpp"

namespace meh {

VarBounds propagate_bounds(const Matrix& h, const Vector& lower, const Vector& upper) {
  if (lower.size() != h.rows() || upper.size() != h.rows()) {
    throw DimensionMismatch("propagate_bounds: bound vectors do not match the rows");
  }
  if (!is_lower_triangular_with_gaps(h)) {
    throw std::invalid_argument("propagate_bounds: matrix is not lower triangular with gaps");
  }
  const std::size_t m = h.rows();
  VarBounds out(h.cols());
  for (std::size_t j = 0; j < h.cols(); ++j) {
    const std::size_t p = pivot_row(h, j);
    if (p >= m) continue;
    Rational lo = lower[p];
    Rational hi = upper[p];
    // Every other non-zero in the pivot row belongs to a column whose pivot
    // row is above p, so it is bounded already.
    for (std::size_t k = 0; k < j; ++k) {
      const Rational& c = h(p, k);
      if (sgn(c) == 0) continue;
      const Rational a = c * *out.lower[k];
      const Rational b = c * *out.upper[k];
      lo -= std::max(a, b);
      hi -= std::min(a, b);
    }
    const Rational& d = h(p, j);
    if (sgn(d) > 0) {
      out.lower[j] = lo / d;
      out.upper[j] = hi / d;
    } else {
      out.lower[j] = hi / d;
      out.upper[j] = lo / d;
    }
  }
  return out;
}

}  // namespace meh
