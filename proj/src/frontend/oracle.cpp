#include "meh/oracle.hpp"

#include "meh/simplex.hpp"

namespace meh {

OracleVerdict brute_force_solve(const ConstraintSystem& sys, const VarBounds& box,
                                std::size_t max_points) {
  const std::size_t n = sys.num_vars();
  const std::size_t n1 = sys.num_rational();
  if (box.size() != n) throw DimensionMismatch("brute_force_solve: box length");

  std::vector<Integer> lo, hi;
  Integer total = 1;
  for (std::size_t j = n1; j < n; ++j) {
    if (!box.finite(j)) {
      throw BoxTooLarge("brute_force_solve: integer variable " + sys.vars()[j].name + " is unbounded");
    }
    lo.push_back(ceil_of(*box.lower[j]));
    hi.push_back(floor_of(*box.upper[j]));
    if (hi.back() < lo.back()) return OracleVerdict{};
    total *= hi.back() - lo.back() + 1;
    if (total > max_points) throw BoxTooLarge("brute_force_solve: more than " + std::to_string(max_points) + " grid points");
  }

  // Residual rows over the rational columns: the system rows, then the box.
  std::vector<Vector> rows;
  std::vector<std::size_t> origin;  // row of sys, or npos for box rows
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  Vector box_rhs;
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    auto a = sys.A().row(i);
    rows.emplace_back(a.begin(), a.begin() + n1);
    origin.push_back(i);
  }
  for (std::size_t j = 0; j < n1; ++j) {
    if (box.lower[j]) {
      Vector r(n1);
      r[j] = -1;
      rows.push_back(r);
      origin.push_back(npos);
      box_rhs.push_back(-*box.lower[j]);
    }
    if (box.upper[j]) {
      Vector r(n1);
      r[j] = 1;
      rows.push_back(r);
      origin.push_back(npos);
      box_rhs.push_back(*box.upper[j]);
    }
  }

  std::vector<VarInfo> vars(sys.vars().begin(), sys.vars().begin() + n1);
  OracleVerdict out;
  std::vector<Integer> point = lo;
  for (;;) {
    ++out.points;
    ConstraintSystem residual(vars);
    bool dead = false;
    std::size_t next_box = 0;
    for (std::size_t k = 0; k < rows.size() && !dead; ++k) {
      Rational rhs;
      if (origin[k] == npos) {
        rhs = box_rhs[next_box++];
      } else {
        rhs = sys.b()[origin[k]];
        for (std::size_t j = n1; j < n; ++j) rhs -= sys.A()(origin[k], j) * point[j - n1];
      }
      if (is_zero(rows[k])) {
        dead = sgn(rhs) < 0;
      } else {
        residual.add_row(rows[k], rhs);
      }
    }
    if (!dead) {
      Vector values(n1);
      bool feasible = true;
      if (n1 > 0 && residual.num_rows() > 0) {
        FeasibilityResult f = check_feasible(residual);
        if (auto* p = std::get_if<Feasible>(&f)) {
          values = p->point;
        } else {
          feasible = false;
        }
      }
      if (feasible) {
        for (const Integer& v : point) values.push_back(Rational(v));
        Model m{std::move(values)};
        if (!check_model(sys, m)) throw std::logic_error("brute_force_solve: witness fails check_model");
        out.sat = true;
        out.witness = std::move(m);
        return out;
      }
    }
    // Odometer step over the integer grid.
    std::size_t d = 0;
    while (d < point.size()) {
      if (point[d] < hi[d]) {
        ++point[d];
        break;
      }
      point[d] = lo[d];
      ++d;
    }
    if (d == point.size()) return out;
  }
}

}  // namespace meh
