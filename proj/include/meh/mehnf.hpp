#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "meh/matrix.hpp"
#include "meh/normal_form.hpp"

namespace meh {

struct BatchMehnf {
  Matrix H;                          // (row_perm . D) * V
  Matrix V;                          // mixed column transformation
  std::vector<std::size_t> row_perm; // row_perm[i]: row of D placed at position i
  std::size_t rank = 0;              // rank of the rational block
};

/// Echelon form of the rational block with its independent rows moved to the
/// top, integer entries of those rows cleared with rational columns, then a
/// Hermite normal form of the remaining integer block.
BatchMehnf batch_mehnf(const Matrix& d, std::size_t n1);

/// One past the last non-zero rational column, 0 if there is none. This is the
/// 1-based index of that column, or equivalently the number of non-zero
/// rational columns of an MEHNF.
std::size_t rpiv(const Matrix& h, std::size_t n1);
/// One past the last non-zero integer column, n1 if there is none.
std::size_t ipiv(const Matrix& h, std::size_t n1);

struct IntEntry {
  std::size_t column;
  Integer value;

  friend bool operator==(const IntEntry&, const IntEntry&) = default;
};

/// Negates the columns col.. whose entry in `row` is negative and returns the
/// positive entries of `row` from col on, scaled by the lcm c of the
/// denominators of the row's integer block.
std::vector<IntEntry> abstract_to_int(Matrix& h, Matrix& v, std::size_t row, std::size_t col,
                                      std::size_t n1);
/// Euclidean reduction of row `row` over the columns col..; afterwards the gcd
/// sits in column col and the row is zero to its right.
void reduce_left_int(Matrix& h, Matrix& v, std::size_t row, std::size_t col, std::size_t n1);
/// Reduces the integer entries of `row` left of col into [0, h(row, col)).
void reduce_right_int(Matrix& h, Matrix& v, std::size_t row, std::size_t col, std::size_t n1);

/// Incrementally maintained MEHNF  H y <= u  of the inserted rows C x <= b,
/// with H = C' V for C' the rows of C in row_order. Rows are removed in the
/// reverse order of insertion and V is kept on removal.
class MehState {
 public:
  enum class Step { Rational, Integer, Appended };

  MehState(std::size_t n1, std::size_t n2, std::size_t valve_bits = 4096);

  std::size_t n1() const { return n1_; }
  std::size_t n() const { return v_.cols(); }
  std::size_t size() const { return h_.rows(); }
  std::size_t rational_rank() const { return r_; }
  std::size_t integer_rank() const { return q_; }
  const Matrix& H() const { return h_; }
  const Vector& u() const { return u_; }
  const Matrix& V() const { return v_; }
  /// row_order()[i]: insertion index of MEHNF row i.
  const std::vector<std::size_t>& row_order() const { return row_order_; }
  /// Inserted rows in insertion order.
  const Matrix& inserted() const { return c_; }
  const Vector& inserted_bounds() const { return b_; }
  std::size_t rebuilds() const { return rebuilds_; }

  /// Transforms a^T x <= b by V and dispatches on the gap it fills.
  Step extend(std::span<const Rational> a, const Rational& b);
  /// h = a^T V fills the rational gap column j.
  void extend_rat(std::span<const Rational> a, std::span<const Rational> h, const Rational& b,
                  std::size_t j);
  /// h = a^T V fills the integer gap column j and no rational gap.
  void extend_int(std::span<const Rational> a, std::span<const Rational> h, const Rational& b,
                  std::size_t j);
  /// Removes the most recent insertion. Throws std::logic_error when empty.
  void backtrack();

  /// is_mehnf, is_mctm and H == C' V.
  bool invariants_hold() const;

 private:
  void insert(std::size_t pos, std::span<const Rational> a, std::span<const Rational> h,
              const Rational& b, Step kind);
  void maybe_rebuild();

  std::size_t n1_;
  std::size_t valve_bits_;
  Matrix h_;
  Vector u_;
  Matrix v_;
  Matrix c_;
  Vector b_;
  std::vector<std::size_t> row_order_;
  std::vector<std::pair<Step, std::size_t>> history_;  // kind and position per insertion
  std::size_t r_ = 0;
  std::size_t q_ = 0;
  std::size_t rebuilds_ = 0;
};

}  // namespace meh
