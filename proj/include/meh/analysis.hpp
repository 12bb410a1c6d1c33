#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "meh/model.hpp"

namespace meh {

class InfeasibleSystemError : public std::runtime_error {
 public:
  explicit InfeasibleSystemError(FarkasCertificate cert)
      : std::runtime_error("system has no rational solution"), certificate(std::move(cert)) {}
  FarkasCertificate certificate;
};

enum class Verdict { Bounded, AbsolutelyUnbounded, PartiallyUnbounded };

std::string to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::Bounded;
  std::vector<std::size_t> bounded_rows;  // increasing
  std::vector<std::size_t> bounded_vars;  // increasing, internal columns
  std::size_t lp_calls = 0;
};

/// h^T x is bounded from both sides on a non-empty A x <= b iff A x <= 0
/// forces h^T x = 0. Throws InfeasibleSystemError on an empty system.
bool is_direction_bounded(const ConstraintSystem& sys, std::span<const Rational> h);

/// Probes every row and every variable over the recession cone. A ray found
/// by one probe settles every row and variable it moves, so most systems need
/// far fewer than 2(m + n) LPs. Throws InfeasibleSystemError.
Classification classify(const ConstraintSystem& sys);

/// l <= D x <= u plus A x <= b.
struct SplitSystem {
  ConstraintSystem unbounded;
  ConstraintSystem bounded;
  Vector lower;
  std::vector<std::size_t> unbounded_origin;
  std::vector<std::size_t> bounded_origin;
  /// lower_proofs[i] over the bounded rows: sum_k y_k d_k = -d_i and
  /// sum_k y_k u_k = -lower[i], i.e. the derivation of -d_i^T x <= -l_i.
  std::vector<Vector> lower_proofs;
};

/// Requires a PartiallyUnbounded classification of sys.
SplitSystem split(const ConstraintSystem& sys, const Classification& cls);

}  // namespace meh
