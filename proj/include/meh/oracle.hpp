#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "meh/mixed_solver.hpp"
#include "meh/model.hpp"

namespace meh {

class BoxTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleVerdict {
  bool sat = false;
  std::optional<Model> witness;
  std::size_t points = 0;  // integer grid points visited
};

/// Exhaustive reference solver: walks every integer point of the box over the
/// integer columns and solves the remaining rational LP at each one. Box
/// bounds on rational columns are added as rows. Throws BoxTooLarge when an
/// integer column is unbounded or the grid exceeds `max_points`.
OracleVerdict brute_force_solve(const ConstraintSystem& sys, const VarBounds& box,
                                std::size_t max_points = 100'000);

}  // namespace meh
