#include "meh/analysis.hpp"

#include <stdexcept>
#include <variant>

#include "meh/simplex.hpp"

namespace meh {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded:
      return "bounded";
    case Verdict::AbsolutelyUnbounded:
      return "absolutely-unbounded";
    case Verdict::PartiallyUnbounded:
      return "partially-unbounded";
  }
  return "?";
}

namespace {

ConstraintSystem recession_cone(const ConstraintSystem& sys) {
  ConstraintSystem cone = sys.empty_copy();
  for (std::size_t i = 0; i < sys.num_rows(); ++i) cone.add_row(sys.A().row(i), Rational(0));
  return cone;
}

void require_feasible(const ConstraintSystem& sys) {
  FeasibilityResult f = check_feasible(sys);
  if (auto* bad = std::get_if<Infeasible>(&f)) throw InfeasibleSystemError(bad->certificate);
}

}  // namespace

bool is_direction_bounded(const ConstraintSystem& sys, std::span<const Rational> h) {
  if (h.size() != sys.num_vars()) throw DimensionMismatch("direction length does not match the system");
  require_feasible(sys);
  const ConstraintSystem cone = recession_cone(sys);
  LpSession lp(cone);
  for (Sense s : {Sense::Max, Sense::Min}) {
    if (!std::holds_alternative<Optimal>(lp.optimize(h, s))) return false;
  }
  return true;
}

Classification classify(const ConstraintSystem& sys) {
  require_feasible(sys);
  const std::size_t m = sys.num_rows();
  const std::size_t n = sys.num_vars();
  const ConstraintSystem cone = recession_cone(sys);
  LpSession lp(cone);
  Classification out;

  std::vector<bool> row_unbounded(m, false);
  std::vector<bool> var_unbounded(n, false);
  auto absorb = [&](const Vector& ray) {
    const Vector ar = sys.A() * ray;
    for (std::size_t k = 0; k < m; ++k) {
      if (sgn(ar[k]) != 0) row_unbounded[k] = true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(ray[j]) != 0) var_unbounded[j] = true;
    }
  };
  // On the cone a_i^T x <= 0 is itself a row, so only the minimum can escape.
  auto probe = [&](std::span<const Rational> h, Sense s) {
    ++out.lp_calls;
    OptOutcome r = lp.optimize(h, s);
    if (auto* ray = std::get_if<UnboundedDirection>(&r)) {
      absorb(ray->ray);
      return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < m; ++i) {
    if (row_unbounded[i]) continue;
    if (probe(sys.A().row(i), Sense::Min)) out.bounded_rows.push_back(i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (var_unbounded[j]) continue;
    const Vector e = unit_vector(n, j);
    if (probe(e, Sense::Max) && probe(e, Sense::Min)) out.bounded_vars.push_back(j);
  }
  if (out.bounded_vars.size() == n) {
    out.verdict = Verdict::Bounded;
  } else if (out.bounded_rows.empty()) {
    out.verdict = Verdict::AbsolutelyUnbounded;
  } else {
    out.verdict = Verdict::PartiallyUnbounded;
  }
  return out;
}

SplitSystem split(const ConstraintSystem& sys, const Classification& cls) {
  SplitSystem out;
  std::vector<bool> bounded(sys.num_rows(), false);
  for (std::size_t i : cls.bounded_rows) bounded.at(i) = true;
  for (std::size_t i = 0; i < sys.num_rows(); ++i) {
    (bounded[i] ? out.bounded_origin : out.unbounded_origin).push_back(i);
  }
  out.bounded = sys.subsystem(out.bounded_origin);
  out.unbounded = sys.subsystem(out.unbounded_origin);
  LpSession lp(out.bounded);
  for (std::size_t i = 0; i < out.bounded.num_rows(); ++i) {
    OptOutcome r = lp.optimize(out.bounded.A().row(i), Sense::Min);
    auto* opt = std::get_if<Optimal>(&r);
    if (!opt) throw std::logic_error("split: bounded row has no finite minimum on its own part");
    out.lower.push_back(opt->value);
    out.lower_proofs.push_back(std::move(opt->y));
  }
  return out;
}

}  // namespace meh
