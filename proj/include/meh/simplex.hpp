#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "meh/model.hpp"
#include "meh/rational.hpp"

namespace meh {

/// Where a bound came from. Row k is the upper bound b_k on the slack of the
/// k-th pushed row; Bound t is a caller-tagged bound on a structural variable.
struct Reason {
  enum class Kind { Row, Bound };
  Kind kind = Kind::Row;
  std::size_t index = 0;

  friend bool operator==(const Reason&, const Reason&) = default;
};

/// One term of a linear combination of bound constraints written as `<=`:
/// an upper bound u on v contributes  v <= u, a lower bound l contributes
/// -v <= -l. Multipliers are positive.
struct ExplanationTerm {
  Reason reason;
  bool upper = true;
  Rational multiplier;
};
using Explanation = std::vector<ExplanationTerm>;

enum class Sense { Max, Min };

struct LpFeasible {};
struct LpInfeasible {
  Explanation why;  // combines to 0 <= negative
};
using CheckOutcome = std::variant<LpFeasible, LpInfeasible>;

struct LpOptimal {
  Rational value;
  Vector point;
  Explanation proof;  // combines to h^T x <= value (Max) or -h^T x <= -value (Min)
};
struct LpUnbounded {
  Vector ray;  // primitive integer, objective strictly improving
};
using LpOutcome = std::variant<LpOptimal, LpUnbounded, LpInfeasible>;

/// Bounds-based primal simplex over exact rationals with a dense tableau.
/// Structural variables are 0..n-1; the slack of row k is variable n + k and
/// carries the row's right-hand side as its upper bound. Both the feasibility
/// search and optimization use Bland's rule.
class Simplex {
 public:
  explicit Simplex(std::size_t num_structural);

  std::size_t num_structural() const { return n_; }
  std::size_t num_rows() const { return vars_.size() - n_; }
  std::size_t pivot_count() const { return pivots_; }

  void push_row(std::span<const Rational> a, const Rational& b);
  /// Throws std::logic_error when no row is active.
  void pop_row();

  /// Bounds set inside a scope are undone by the matching pop.
  void push_bound_scope();
  void pop_bound_scope();
  /// Tightening only; a looser bound than the current one is ignored.
  void set_lower(std::size_t j, const Rational& value, std::size_t tag);
  void set_upper(std::size_t j, const Rational& value, std::size_t tag);

  CheckOutcome check();
  /// Current values of the structural variables.
  Vector point() const;
  LpOutcome optimize(std::span<const Rational> c, Sense sense);

 private:
  struct Bound {
    Rational value;
    Reason reason;
  };
  struct Var {
    std::optional<Bound> lower;
    std::optional<Bound> upper;
    Rational value;
    std::ptrdiff_t basic_row = -1;
  };
  struct TrailEntry {
    std::size_t var;
    bool upper;
    std::optional<Bound> previous;
  };

  bool below_lower(std::size_t v) const;
  bool above_upper(std::size_t v) const;
  void update_nonbasic(std::size_t k, const Rational& value);
  void pivot(std::size_t row, std::size_t entering);
  void pivot_and_update(std::size_t row, std::size_t entering, const Rational& value);
  void assign_bound(std::size_t v, bool upper, std::optional<Bound> bound);
  std::optional<LpInfeasible> crossed_bounds() const;
  Vector objective_row(std::span<const Rational> c) const;
  Explanation row_explanation(std::size_t row, bool raise) const;

  std::size_t n_;
  std::vector<Var> vars_;
  std::vector<Vector> rows_;        // rows_[r][k]: coefficient of variable k in basic_[r]
  std::vector<std::size_t> basic_;  // basic_[r]: variable defined by row r
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> scopes_;
  std::size_t pivots_ = 0;
};

struct Feasible {
  Vector point;
};
struct Infeasible {
  FarkasCertificate certificate;
};
using FeasibilityResult = std::variant<Feasible, Infeasible>;

/// Proof y >= 0 over the rows with y^T A = s h and y^T b = s value, where
/// s = +1 for Max and -1 for Min.
struct Optimal {
  Rational value;
  Vector point;
  Vector y;
};
struct UnboundedDirection {
  Vector ray;
};
using OptOutcome = std::variant<Optimal, UnboundedDirection, Infeasible>;

/// Dense multipliers over `num_rows` rows followed by `num_tags` tagged
/// bounds (tag t lands at num_rows + t).
Vector explanation_multipliers(const Explanation& why, std::size_t num_rows, std::size_t num_tags);

/// Re-verified before returning: points by check_rational_model, certificates
/// by check_certificate, optimality proofs by recombination.
FeasibilityResult check_feasible(const ConstraintSystem& sys);
OptOutcome optimize(const ConstraintSystem& sys, std::span<const Rational> h, Sense sense);

/// Reuses one tableau for many objectives over the same rows.
class LpSession {
 public:
  explicit LpSession(const ConstraintSystem& sys);
  OptOutcome optimize(std::span<const Rational> h, Sense sense);
  std::size_t pivot_count() const { return simplex_.pivot_count(); }

 private:
  const ConstraintSystem& sys_;
  Simplex simplex_;
};

}  // namespace meh
