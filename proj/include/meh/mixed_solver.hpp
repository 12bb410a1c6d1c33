#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "meh/analysis.hpp"
#include "meh/mehnf.hpp"
#include "meh/model.hpp"

namespace meh {

enum class BranchRule { MostFractional, FirstFractional };

struct SolveOptions {
  bool transforms_enabled = true;
  /// Partially unbounded systems: alternate plain branch-and-bound on the
  /// original rows with the run on the transformed system.
  bool interleave_plain = true;
  std::size_t branch_limit = 1'000'000;
  std::size_t depth_limit = 100'000;
  std::chrono::milliseconds time_budget{60'000};
  BranchRule branch_rule = BranchRule::MostFractional;
};

struct VarBounds {
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  explicit VarBounds(std::size_t n = 0) : lower(n), upper(n) {}
  std::size_t size() const { return lower.size(); }
  bool finite(std::size_t j) const { return lower[j] && upper[j]; }
};

struct SolveStats {
  std::size_t nodes = 0;
  std::size_t max_depth = 0;
  std::size_t lp_pivots = 0;
  std::size_t classification_lps = 0;
  std::optional<Verdict> verdict;
  double transform_seconds = 0;
  double total_seconds = 0;
};

struct Sat {
  Model model;
};
struct Unsat {
  UnsatCertificate certificate;
};
struct Budget {
  std::string reason;
};

struct SolveResult {
  std::variant<Sat, Unsat, Budget> outcome;
  SolveStats stats;

  bool is_sat() const { return std::holds_alternative<Sat>(outcome); }
  bool is_unsat() const { return std::holds_alternative<Unsat>(outcome); }
  bool is_budget() const { return std::holds_alternative<Budget>(outcome); }
};

/// Interval propagation along the pivot rows of a lower triangular matrix
/// with gaps: l <= H x <= u. Zero columns get no bounds. Throws
/// std::invalid_argument when H does not have that shape.
VarBounds propagate_bounds(const Matrix& h, const Vector& lower, const Vector& upper);

/// Depth-first branch-and-bound, floor branch first. `extra` bounds are added
/// as rows after the rows of sys (a lower bound as -x_j <= -l, then an upper
/// bound as x_j <= u, in column order), and an Unsat certificate refers to
/// that extended row list. Leaves of the refutation tree that do not use the
/// split above them replace their parent, so a system refuted without
/// branching yields a plain Farkas certificate.
SolveResult branch_and_bound(const ConstraintSystem& sys, const VarBounds& extra,
                             const SolveOptions& opt);

/// Shrinks every row by half the 1-norm of its integer coefficients, finds a
/// rational point of the result and rounds its integer coordinates to the
/// nearest integer (halves go down). Returns a verified model or nothing.
std::optional<Model> unit_cube_test(const ConstraintSystem& sys);

/// H y <= P u followed by -H y <= -P l over the transformed variables.
ConstraintSystem double_bounded_system(const SplitSystem& split, const BatchMehnf& form);

/// Extends a model t of the double-bounded system to a model of the whole
/// split system: the non-zero columns of H keep t, the zero columns are
/// chosen by the cube test on the unbounded part, and the result is V t'.
/// Throws std::logic_error if the cube test fails.
Model mixed_extension(const SplitSystem& split, const BatchMehnf& form, const Model& t);

/// Rewrites a refutation of the double-bounded system as one of the system
/// the split was taken from (with `rows` rows): upper rows map through the
/// permutation and the split's origin, lower rows expand into the recorded
/// derivation of their bound, and splits on y_j become splits on row j of
/// V^-1.
UnsatCertificate convert_certificate(const SplitSystem& split, const BatchMehnf& form,
                                     const UnsatCertificate& cert, std::size_t rows);

/// normalize, rational feasibility, classify, then branch-and-bound (bounded),
/// the cube test (absolutely unbounded) or split + transform + branch-and-bound
/// (partially unbounded). Every answer is re-checked against `sys`.
/// With interleave_plain the last step alternates with plain
/// branch-and-bound on sys under doubling node budgets.
SolveResult solve(const ConstraintSystem& sys, const SolveOptions& opt = {});

}  // namespace meh
