#include "meh/mehnf.hpp"

#include <algorithm>
#include <stdexcept>

namespace meh {

namespace {

// One past the last non-zero entry of v in [begin, end), or begin.
std::size_t frontier(std::span<const Rational> v, std::size_t begin, std::size_t end) {
  for (std::size_t j = end; j > begin; --j) {
    if (sgn(v[j - 1]) != 0) return j;
  }
  return begin;
}

std::size_t column_frontier(const Matrix& h, std::size_t begin, std::size_t end) {
  for (std::size_t j = end; j > begin; --j) {
    if (!h.is_zero_column(j - 1)) return j;
  }
  return begin;
}

Integer integer_block_scale(const Matrix& h, std::size_t row, std::size_t n1) {
  return lcm_of_denominators(h.row(row).subspan(n1));
}

void column_op(Matrix& h, Matrix& v, std::size_t dst, std::size_t src, const Rational& factor) {
  h.add_column_multiple(dst, src, factor);
  v.add_column_multiple(dst, src, factor);
}

}  // namespace

BatchMehnf batch_mehnf(const Matrix& d, std::size_t n1) {
  const std::size_t m = d.rows();
  const std::size_t n = d.cols();
  if (n1 > n) throw DimensionMismatch("batch_mehnf: more rational columns than columns");
  BatchMehnf out;
  const EchelonColumnForm ref = reduced_echelon_column_form(d.block(0, m, 0, n1));
  out.rank = ref.rank;

  std::vector<bool> pivot(m, false);
  for (std::size_t i : ref.pivot_rows) {
    pivot[i] = true;
    out.row_perm.push_back(i);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!pivot[i]) out.row_perm.push_back(i);
  }
  const Matrix dp = d.select_rows(out.row_perm);

  out.V = Matrix::identity(n);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) out.V(i, j) = ref.V(i, j);
  out.H = dp * out.V;

  // The pivot rows are unit rows on the rational block; clear their integer
  // entries with the matching rational column.
  for (std::size_t k = 0; k < out.rank; ++k) {
    for (std::size_t j = n1; j < n; ++j) {
      const Rational f = out.H(k, j);
      if (sgn(f) != 0) column_op(out.H, out.V, j, k, -f);
    }
  }

  const HermiteForm hf = hermite_normal_form(out.H.block(out.rank, m, n1, n));
  Matrix vint = out.V.block(0, n, n1, n) * hf.U;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n1; j < n; ++j) out.V(i, j) = vint(i, j - n1);
  out.H = dp * out.V;
  return out;
}

std::size_t rpiv(const Matrix& h, std::size_t n1) { return column_frontier(h, 0, n1); }

std::size_t ipiv(const Matrix& h, std::size_t n1) { return column_frontier(h, n1, h.cols()); }

std::vector<IntEntry> abstract_to_int(Matrix& h, Matrix& v, std::size_t row, std::size_t col,
                                      std::size_t n1) {
  const Integer c = integer_block_scale(h, row, n1);
  std::vector<IntEntry> s;
  for (std::size_t j = col; j < h.cols(); ++j) {
    if (sgn(h(row, j)) < 0) {
      h.negate_column(j);
      v.negate_column(j);
    }
    if (sgn(h(row, j)) > 0) {
      const Rational scaled = h(row, j) * c;
      s.push_back({j, scaled.get_num()});
    }
  }
  return s;
}

void reduce_left_int(Matrix& h, Matrix& v, std::size_t row, std::size_t col, std::size_t n1) {
  std::vector<IntEntry> s = abstract_to_int(h, v, row, col, n1);
  if (s.empty()) throw std::logic_error("reduce_left_int: nothing to reduce");
  while (s.size() != 1) {
    const auto smallest = std::min_element(
        s.begin(), s.end(), [](const IntEntry& a, const IntEntry& b) { return a.value < b.value; });
    const IntEntry pivot = *smallest;
    std::vector<IntEntry> next;
    for (IntEntry& e : s) {
      if (e.column == pivot.column) {
        next.push_back(e);
        continue;
      }
      Integer d;
      mpz_fdiv_q(d.get_mpz_t(), e.value.get_mpz_t(), pivot.value.get_mpz_t());
      e.value -= d * pivot.value;
      column_op(h, v, e.column, pivot.column, Rational(-d));
      if (sgn(e.value) != 0) next.push_back(e);
    }
    s = std::move(next);
  }
  h.swap_columns(s.front().column, col);
  v.swap_columns(s.front().column, col);
}

void reduce_right_int(Matrix& h, Matrix& v, std::size_t row, std::size_t col, std::size_t n1) {
  const Integer c = integer_block_scale(h, row, n1);
  const Rational spp_q = h(row, col) * c;
  const Integer spp = spp_q.get_num();
  if (sgn(spp) <= 0) throw std::logic_error("reduce_right_int: pivot must be positive");
  for (std::size_t j = n1; j < col; ++j) {
    const Rational spj_q = h(row, j) * c;
    const Integer spj = spj_q.get_num();
    Integer d;
    mpz_fdiv_q(d.get_mpz_t(), spj.get_mpz_t(), spp.get_mpz_t());
    if (sgn(d) != 0) column_op(h, v, j, col, Rational(-d));
  }
}

MehState::MehState(std::size_t n1, std::size_t n2, std::size_t valve_bits)
    : n1_(n1),
      valve_bits_(valve_bits),
      h_(0, n1 + n2),
      v_(Matrix::identity(n1 + n2)),
      c_(0, n1 + n2) {}

void MehState::insert(std::size_t pos, std::span<const Rational> a, std::span<const Rational> h,
                      const Rational& b, Step kind) {
  h_.insert_row(pos, h);
  u_.insert(u_.begin() + static_cast<std::ptrdiff_t>(pos), b);
  row_order_.insert(row_order_.begin() + static_cast<std::ptrdiff_t>(pos), c_.rows());
  c_.append_row(a);
  b_.push_back(b);
  history_.emplace_back(kind, pos);
}

MehState::Step MehState::extend(std::span<const Rational> a, const Rational& b) {
  if (a.size() != n()) throw DimensionMismatch("extend: wrong number of coefficients");
  const Vector h = row_times(a, v_);
  Step step = Step::Appended;
  const std::size_t jr = frontier(h, 0, n1_);
  if (jr > r_) {
    extend_rat(a, h, b, jr - 1);
    step = Step::Rational;
  } else {
    const std::size_t ji = frontier(h, n1_, n());
    if (ji > n1_ + q_) {
      extend_int(a, h, b, ji - 1);
      step = Step::Integer;
    } else {
      insert(h_.rows(), a, h, b, Step::Appended);
    }
  }
  maybe_rebuild();
  return step;
}

void MehState::extend_rat(std::span<const Rational> a, std::span<const Rational> h,
                          const Rational& b, std::size_t j) {
  if (h.size() != n() || a.size() != n()) throw DimensionMismatch("extend_rat: wrong row length");
  if (j < r_ || j >= n1_ || sgn(h[j]) == 0 || !h_.is_zero_column(j)) {
    throw std::invalid_argument("extend_rat: column is not a filled rational gap");
  }
  const std::size_t p = r_;
  insert(p, a, h, b, Step::Rational);
  h_.swap_columns(j, p);
  v_.swap_columns(j, p);
  const Rational inv = 1 / h_(p, p);
  h_.scale_column(p, inv);
  v_.scale_column(p, inv);
  for (std::size_t k = 0; k < n(); ++k) {
    if (k == p) continue;
    const Rational f = h_(p, k);
    if (sgn(f) != 0) column_op(h_, v_, k, p, -f);
  }
  ++r_;
}

void MehState::extend_int(std::span<const Rational> a, std::span<const Rational> h,
                          const Rational& b, std::size_t j) {
  if (h.size() != n() || a.size() != n()) throw DimensionMismatch("extend_int: wrong row length");
  if (j < n1_ + q_ || j >= n() || sgn(h[j]) == 0 || !h_.is_zero_column(j) ||
      frontier(h, 0, n1_) > r_) {
    throw std::invalid_argument("extend_int: column is not a filled integer gap");
  }
  // The new row becomes the pivot row of the next integer column; the row and
  // column indices differ by the rational rank and the rational columns.
  const std::size_t row = r_ + q_;
  const std::size_t col = n1_ + q_;
  insert(row, a, h, b, Step::Integer);
  reduce_left_int(h_, v_, row, col, n1_);
  reduce_right_int(h_, v_, row, col, n1_);
  ++q_;
}

void MehState::backtrack() {
  if (history_.empty()) throw std::logic_error("backtrack on an empty MEHNF state");
  const auto [kind, pos] = history_.back();
  history_.pop_back();
  h_.erase_row(pos);
  u_.erase(u_.begin() + static_cast<std::ptrdiff_t>(pos));
  row_order_.erase(row_order_.begin() + static_cast<std::ptrdiff_t>(pos));
  c_.erase_last_row();
  b_.pop_back();
  if (kind == Step::Rational) --r_;
  if (kind == Step::Integer) --q_;
}

void MehState::maybe_rebuild() {
  std::size_t bits = 0;
  for (std::size_t i = 0; i < v_.rows() && bits <= valve_bits_; ++i)
    for (std::size_t j = 0; j < v_.cols(); ++j) bits = std::max(bits, bit_size(v_(i, j)));
  if (bits <= valve_bits_) return;
  // Replaying the insertions from the identity keeps the insertion-order
  // prefix property that backtracking relies on.
  const Matrix rows = c_;
  const Vector bounds = b_;
  const std::size_t valve = valve_bits_;
  const std::size_t count = rebuilds_;
  *this = MehState(n1_, n() - n1_, valve);
  valve_bits_ = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < rows.rows(); ++i) extend(rows.row(i), bounds[i]);
  valve_bits_ = valve;
  rebuilds_ = count + 1;
}

bool MehState::invariants_hold() const {
  if (rpiv(h_, n1_) != r_ || ipiv(h_, n1_) != n1_ + q_) return false;
  if (!is_mehnf(h_, n1_, r_)) return false;
  if (!is_mctm(v_, n1_, n() - n1_)) return false;
  return h_ == c_.select_rows(row_order_) * v_;
}

}  // namespace meh
