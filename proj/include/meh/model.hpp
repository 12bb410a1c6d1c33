#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "meh/matrix.hpp"
#include "meh/rational.hpp"

namespace meh {

enum class VarKind { Rational, Integer };

struct VarInfo {
  std::string name;
  VarKind kind = VarKind::Integer;

  friend bool operator==(const VarInfo&, const VarInfo&) = default;
};

struct RowTag {
  std::string label;                   // e.g. "line 12" or "slack x"
  std::optional<std::size_t> partner;  // the opposing row of an equality pair

  friend bool operator==(const RowTag&, const RowTag&) = default;
};

class MctmViolation : public std::invalid_argument {
 public:
  MctmViolation() : std::invalid_argument("transform is not a mixed column transformation matrix") {}
};

/// A x <= b over mixed variables. Columns are kept rationals-first; the
/// declaration order survives in user_perm.
class ConstraintSystem {
 public:
  ConstraintSystem() = default;
  /// `declared` in user order; internal columns put rationals first (stable).
  explicit ConstraintSystem(std::vector<VarInfo> declared);

  std::size_t num_rows() const { return b_.size(); }
  std::size_t num_vars() const { return vars_.size(); }
  std::size_t num_rational() const { return n_rational_; }
  std::size_t num_integer() const { return vars_.size() - n_rational_; }
  bool is_integer_column(std::size_t j) const { return j >= n_rational_; }

  const Matrix& A() const { return a_; }
  const Vector& b() const { return b_; }
  const std::vector<VarInfo>& vars() const { return vars_; }
  /// user_perm()[k] = internal column of the k-th declared variable.
  const std::vector<std::size_t>& user_perm() const { return user_perm_; }
  const std::vector<RowTag>& row_tags() const { return row_tags_; }

  /// Coefficients in internal column order.
  std::size_t add_row(std::span<const Rational> coeffs, const Rational& bound, RowTag tag = {});
  std::size_t add_row_user_order(std::span<const Rational> coeffs, const Rational& bound,
                                 RowTag tag = {});
  void pop_row();
  void set_partner(std::size_t row, std::size_t partner);

  /// Same variables, no rows.
  ConstraintSystem empty_copy() const;
  /// Rows `indices` (in that order) over the same variables.
  ConstraintSystem subsystem(std::span<const std::size_t> indices) const;

  friend bool operator==(const ConstraintSystem&, const ConstraintSystem&) = default;

 private:
  Matrix a_;
  Vector b_;
  std::vector<VarInfo> vars_;
  std::vector<std::size_t> user_perm_;
  std::vector<RowTag> row_tags_;
  std::size_t n_rational_ = 0;
};

struct Model {
  Vector values;  // internal column order
};

/// y >= 0 with y[k] the multiplier of row row_map[k].
struct FarkasCertificate {
  Vector y;
  std::vector<std::size_t> row_map;

  /// Drops zero multipliers and merges duplicate rows.
  FarkasCertificate compacted() const;
};

/// Integer split  normal^T x <= bound  |  normal^T x >= bound + 1.
struct SplitInequality {
  Vector normal;
  Integer bound;
};

/// A branch-and-bound refutation. Leaves carry Farkas certificates over the
/// system rows 0..m-1 followed by the path constraints m, m+1, ... from the
/// root (the low child adds normal^T x <= bound, the high child adds
/// -normal^T x <= -(bound + 1)). A single leaf is a plain Farkas certificate.
struct UnsatCertificate {
  struct Node {
    std::optional<SplitInequality> split;
    std::size_t low = 0;
    std::size_t high = 0;
    FarkasCertificate leaf;
  };
  std::vector<Node> nodes;  // root is nodes[0]

  static UnsatCertificate from_farkas(FarkasCertificate cert);
  bool is_farkas() const { return nodes.size() == 1 && !nodes[0].split; }
  const FarkasCertificate& farkas() const { return nodes.at(0).leaf; }
  std::size_t leaf_count() const;
};

struct TriviallyUnsat {
  FarkasCertificate certificate;
};

struct Normalized {
  ConstraintSystem system;
  std::vector<std::size_t> origin;  // origin[i] = input row of normalized row i
};

/// Drops constant rows 0 <= b_i with b_i >= 0; a constant row with b_i < 0 is
/// its own unit certificate.
std::variant<Normalized, TriviallyUnsat> normalize(const ConstraintSystem& sys);

/// A s <= b exactly and integral integer columns. Throws DimensionMismatch.
bool check_model(const ConstraintSystem& sys, const Model& s);
/// Same, ignoring integrality.
bool check_rational_model(const ConstraintSystem& sys, std::span<const Rational> s);
/// y >= 0, y^T A = 0, y^T b < 0. Throws DimensionMismatch.
bool check_certificate(const ConstraintSystem& sys, const FarkasCertificate& cert);
/// Validates every split (zero on rational columns, integral on integer
/// columns) and every leaf against the system plus its path constraints.
bool check_refutation(const ConstraintSystem& sys, const UnsatCertificate& cert);

/// A * V with fresh column names; throws MctmViolation.
ConstraintSystem apply_column_transform(const ConstraintSystem& sys, const Matrix& v);
/// s = V t.
Model convert_model(const Matrix& v, const Model& t);

/// `name = value` per declared variable, declaration order.
std::string format_model(const ConstraintSystem& sys, const Model& s);
/// `row multiplier` per non-zero multiplier; refutation trees are printed as
/// an indented branch listing.
std::string format_certificate(const ConstraintSystem& sys, const UnsatCertificate& cert);

}  // namespace meh
