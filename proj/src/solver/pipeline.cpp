#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include "meh/mixed_solver.hpp"
#include "meh/simplex.hpp"

namespace meh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Adds `value` times old row `pos` (pos < old_rows) to the new dense multipliers.
using Spread = std::function<void(std::size_t pos, const Rational& value, Vector& out)>;

// Rewrites every leaf from old_rows system rows to new_rows ones; path rows
// keep their depth. Split normals go through `normal`.
UnsatCertificate map_refutation(const UnsatCertificate& cert, std::size_t old_rows,
                                std::size_t new_rows, const Spread& spread,
                                const std::function<Vector(const Vector&)>& normal) {
  UnsatCertificate out = cert;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    UnsatCertificate::Node& node = out.nodes.at(id);
    if (node.split) {
      node.split->normal = normal(node.split->normal);
      stack.emplace_back(node.high, depth + 1);
      stack.emplace_back(node.low, depth + 1);
      continue;
    }
    const FarkasCertificate& old = node.leaf;
    Vector y(new_rows + depth);
    for (std::size_t k = 0; k < old.y.size(); ++k) {
      if (sgn(old.y[k]) == 0) continue;
      const std::size_t pos = old.row_map.empty() ? k : old.row_map[k];
      if (pos < old_rows) {
        spread(pos, old.y[k], y);
      } else {
        y.at(new_rows + (pos - old_rows)) += old.y[k];
      }
    }
    node.leaf = FarkasCertificate{std::move(y), {}};
  }
  return out;
}

Vector identity_normal(const Vector& v) { return v; }

}  // namespace

ConstraintSystem double_bounded_system(const SplitSystem& split, const BatchMehnf& form) {
  const ConstraintSystem& d = split.bounded;
  std::vector<VarInfo> vars;
  for (std::size_t j = 0; j < d.num_vars(); ++j) {
    vars.push_back({"y" + std::to_string(j + 1), d.vars()[j].kind});
  }
  ConstraintSystem t(std::move(vars));
  const std::size_t m2 = d.num_rows();
  for (std::size_t i = 0; i < m2; ++i) {
    t.add_row(form.H.row(i), d.b()[form.row_perm[i]], RowTag{"upper", std::nullopt});
  }
  for (std::size_t i = 0; i < m2; ++i) {
    Vector neg = form.H.row_vector(i);
    for (Rational& x : neg) x = -x;
    t.add_row(neg, -split.lower[form.row_perm[i]], RowTag{"lower", std::nullopt});
  }
  for (std::size_t i = 0; i < m2; ++i) t.set_partner(i, m2 + i);
  return t;
}

Model mixed_extension(const SplitSystem& split, const BatchMehnf& form, const Model& t) {
  const std::size_t n = form.V.cols();
  if (t.values.size() != n) throw DimensionMismatch("mixed_extension: model length");
  std::vector<std::size_t> free_cols;
  std::vector<VarInfo> vars;
  for (std::size_t j = 0; j < n; ++j) {
    if (form.H.is_zero_column(j)) {
      free_cols.push_back(j);
      vars.push_back({"y" + std::to_string(j + 1), split.bounded.vars()[j].kind});
    }
  }
  // Columns keep their order, and rational columns come first in both
  // systems, so residual column k is free_cols[k].
  ConstraintSystem residual(std::move(vars));
  const ConstraintSystem& a = split.unbounded;
  const Matrix av = a.A() * form.V;
  for (std::size_t i = 0; i < a.num_rows(); ++i) {
    Rational rhs = a.b()[i];
    Vector coeffs;
    std::size_t next = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (next < free_cols.size() && free_cols[next] == j) {
        coeffs.push_back(av(i, j));
        ++next;
      } else {
        rhs -= av(i, j) * t.values[j];
      }
    }
    residual.add_row(coeffs, rhs);
  }
  const std::optional<Model> cube = unit_cube_test(residual);
  if (!cube) throw std::logic_error("mixed extension: cube test failed on the unbounded part");
  Model full = t;
  for (std::size_t k = 0; k < free_cols.size(); ++k) full.values[free_cols[k]] = cube->values[k];
  Model s = convert_model(form.V, full);
  if (!check_model(split.bounded, s) || !check_model(split.unbounded, s)) {
    throw std::logic_error("mixed extension does not satisfy the split system");
  }
  return s;
}

UnsatCertificate convert_certificate(const SplitSystem& split, const BatchMehnf& form,
                                     const UnsatCertificate& cert, std::size_t rows) {
  const std::size_t m2 = split.bounded.num_rows();
  const Matrix v_inverse = invert(form.V);
  Spread spread = [&](std::size_t pos, const Rational& value, Vector& out) {
    if (pos < m2) {
      out.at(split.bounded_origin[form.row_perm[pos]]) += value;
      return;
    }
    const Vector& proof = split.lower_proofs.at(form.row_perm[pos - m2]);
    for (std::size_t k = 0; k < proof.size(); ++k) {
      if (sgn(proof[k]) != 0) out.at(split.bounded_origin[k]) += value * proof[k];
    }
  };
  return map_refutation(cert, 2 * m2, rows, spread,
                        [&](const Vector& w) { return row_times(w, v_inverse); });
}

SolveResult solve(const ConstraintSystem& sys, const SolveOptions& opt) {
  const auto start = Clock::now();
  SolveResult result{Budget{}, {}};

  auto verified = [&](SolveResult r) {
    if (auto* sat = std::get_if<Sat>(&r.outcome)) {
      if (!check_model(sys, sat->model)) throw std::logic_error("solver model fails verification");
    } else if (auto* unsat = std::get_if<Unsat>(&r.outcome)) {
      if (!check_refutation(sys, unsat->certificate)) {
        throw std::logic_error("solver certificate fails verification");
      }
    }
    r.stats.total_seconds = seconds_since(start);
    return r;
  };

  auto normal = normalize(sys);
  if (auto* trivial = std::get_if<TriviallyUnsat>(&normal)) {
    result.outcome = Unsat{UnsatCertificate::from_farkas(trivial->certificate)};
    return verified(std::move(result));
  }
  const Normalized& nz = std::get<Normalized>(normal);
  const ConstraintSystem& s = nz.system;
  auto lift = [&](const UnsatCertificate& c) {
    return map_refutation(
        c, s.num_rows(), sys.num_rows(),
        [&](std::size_t pos, const Rational& value, Vector& out) { out.at(nz.origin[pos]) += value; },
        identity_normal);
  };
  auto adopt = [&](SolveResult r) {
    r.stats.verdict = result.stats.verdict;
    r.stats.classification_lps = result.stats.classification_lps;
    r.stats.transform_seconds = result.stats.transform_seconds;
    if (auto* unsat = std::get_if<Unsat>(&r.outcome)) unsat->certificate = lift(unsat->certificate);
    return verified(std::move(r));
  };

  if (!opt.transforms_enabled) return adopt(branch_and_bound(s, VarBounds{}, opt));

  FeasibilityResult feasible = check_feasible(s);
  if (auto* bad = std::get_if<Infeasible>(&feasible)) {
    result.outcome = Unsat{UnsatCertificate::from_farkas(bad->certificate)};
    return adopt(std::move(result));
  }

  const Classification cls = classify(s);
  result.stats.verdict = cls.verdict;
  result.stats.classification_lps = cls.lp_calls;

  switch (cls.verdict) {
    case Verdict::Bounded:
      return adopt(branch_and_bound(s, VarBounds{}, opt));
    case Verdict::AbsolutelyUnbounded: {
      std::optional<Model> m = unit_cube_test(s);
      if (!m) throw std::logic_error("cube test failed on an absolutely unbounded system");
      result.outcome = Sat{std::move(*m)};
      return adopt(std::move(result));
    }
    case Verdict::PartiallyUnbounded:
      break;
  }

  const auto transform_start = Clock::now();
  const SplitSystem sp = split(s, cls);
  const BatchMehnf form = batch_mehnf(sp.bounded.A(), s.num_rational());
  const ConstraintSystem t = double_bounded_system(sp, form);
  const std::size_t m2 = sp.bounded.num_rows();
  {
    Vector lo(m2), hi(m2);
    for (std::size_t i = 0; i < m2; ++i) {
      hi[i] = t.b()[i];
      lo[i] = -t.b()[m2 + i];
    }
    const VarBounds box = propagate_bounds(form.H, lo, hi);
    for (std::size_t j = 0; j < box.size(); ++j) {
      if (!form.H.is_zero_column(j) && !box.finite(j)) {
        throw std::logic_error("transformed bounded part left a pivot column unbounded");
      }
    }
  }
  result.stats.transform_seconds = seconds_since(transform_start);

  auto back_to_s = [&](SolveResult inner) {
    if (auto* sat = std::get_if<Sat>(&inner.outcome)) {
      sat->model = mixed_extension(sp, form, sat->model);
    } else if (auto* unsat = std::get_if<Unsat>(&inner.outcome)) {
      unsat->certificate = convert_certificate(sp, form, unsat->certificate, s.num_rows());
    }
    return adopt(std::move(inner));
  };
  if (!opt.interleave_plain) return back_to_s(branch_and_bound(t, VarBounds{}, opt));

  // Plain and transformed searches take turns, each restarted with a doubled
  // node budget. The transformed one always terminates; the plain one is
  // often far quicker when the transform produces large pivots. A plain dive
  // past the depth cap is taken as divergence along a ray and ends the plain
  // turns.
  const std::size_t plain_depth = std::min(opt.depth_limit, 16 * s.num_vars() + 64);
  bool plain_alive = true;
  SolveStats total;
  for (std::size_t budget = 256;; budget *= 2) {
    for (const bool plain : {true, false}) {
      if (plain && !plain_alive) continue;
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
      if (total.nodes >= opt.branch_limit || elapsed >= opt.time_budget) {
        result.outcome = Budget{total.nodes >= opt.branch_limit ? "branch limit reached" : "time budget exhausted"};
        result.stats.nodes = total.nodes;
        result.stats.max_depth = total.max_depth;
        result.stats.lp_pivots = total.lp_pivots;
        return adopt(std::move(result));
      }
      SolveOptions round = opt;
      round.branch_limit = opt.branch_limit - total.nodes;
      if (plain_alive) round.branch_limit = std::min(budget, round.branch_limit);
      round.time_budget = opt.time_budget - elapsed;
      if (plain) round.depth_limit = plain_depth;
      SolveResult r = branch_and_bound(plain ? s : t, VarBounds{}, round);
      total.nodes += r.stats.nodes;
      total.max_depth = std::max(total.max_depth, r.stats.max_depth);
      total.lp_pivots += r.stats.lp_pivots;
      if (r.is_budget()) {
        if (plain && r.stats.max_depth >= plain_depth) plain_alive = false;
        // Depth limit on the transformed side: another turn would repeat it.
        const bool stuck = !plain && r.stats.max_depth >= opt.depth_limit;
        if (!stuck && (plain || plain_alive)) continue;
      }
      r.stats.nodes = total.nodes;
      r.stats.max_depth = total.max_depth;
      r.stats.lp_pivots = total.lp_pivots;
      return plain ? adopt(std::move(r)) : back_to_s(std::move(r));
    }
  }
}

}  // namespace meh
