#include "meh/mixed_solver.hpp"
#include "meh/simplex.hpp"

namespace meh {

std::optional<Model> unit_cube_test(const ConstraintSystem& sys) {
  ConstraintSystem widened = sys.empty_copy();
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    Rational half_norm;
    auto a = sys.A().row(i);
    for (std::size_t j = sys.num_rational(); j < sys.num_vars(); ++j) half_norm += abs(a[j]);
    half_norm /= 2;
    widened.add_row(a, sys.b()[i] - half_norm);
  }
  FeasibilityResult f = check_feasible(widened);
  auto* centre = std::get_if<Feasible>(&f);
  if (!centre) return std::nullopt;
  Model s{centre->point};
  for (std::size_t j = sys.num_rational(); j < sys.num_vars(); ++j) {
    // Nearest integer with halves rounded down: ceil(v - 1/2).
    s.values[j] = Rational(ceil_of(s.values[j] - Rational(1, 2)));
  }
  if (!check_model(sys, s)) return std::nullopt;
  return s;
}

}  // namespace meh
