#include <chrono>
#include <stdexcept>

#include "meh/mixed_solver.hpp"
#include "meh/simplex.hpp"

namespace meh {

namespace {

using Clock = std::chrono::steady_clock;

std::optional<std::size_t> branch_variable(const ConstraintSystem& sys, const Vector& p,
                                           BranchRule rule) {
  std::optional<std::size_t> best;
  Rational best_distance;
  for (std::size_t j = sys.num_rational(); j < sys.num_vars(); ++j) {
    if (is_integral(p[j])) continue;
    if (rule == BranchRule::FirstFractional) return j;
    const Rational frac = p[j] - Rational(floor_of(p[j]));
    const Rational distance = std::min(frac, Rational(1 - frac));
    if (!best || distance > best_distance) {
      best = j;
      best_distance = distance;
    }
  }
  return best;
}

// Keeps only the nodes reachable from the root, renumbered in preorder.
UnsatCertificate compact(const std::vector<UnsatCertificate::Node>& nodes, std::size_t root) {
  UnsatCertificate out;
  struct Item {
    std::size_t old_id;
    std::size_t parent;  // new id; root has none
    bool high;
  };
  std::vector<Item> stack{{root, static_cast<std::size_t>(-1), false}};
  while (!stack.empty()) {
    const Item it = stack.back();
    stack.pop_back();
    const std::size_t id = out.nodes.size();
    out.nodes.push_back(nodes[it.old_id]);
    if (it.parent != static_cast<std::size_t>(-1)) {
      (it.high ? out.nodes[it.parent].high : out.nodes[it.parent].low) = id;
    }
    if (out.nodes[id].split) {
      stack.push_back({nodes[it.old_id].high, id, true});
      stack.push_back({nodes[it.old_id].low, id, false});
    }
  }
  return out;
}

}  // namespace

SolveResult branch_and_bound(const ConstraintSystem& sys, const VarBounds& extra,
                             const SolveOptions& opt) {
  const auto start = Clock::now();
  const std::size_t n = sys.num_vars();
  if (extra.size() != 0 && extra.size() != n) {
    throw DimensionMismatch("branch_and_bound: bounds do not match the variables");
  }
  ConstraintSystem extended;
  const ConstraintSystem* work = &sys;
  if (extra.size() != 0) {
    extended = sys;
    for (std::size_t j = 0; j < n; ++j) {
      if (extra.lower[j]) {
        Vector row = zero_vector(n);
        row[j] = -1;
        extended.add_row(row, -*extra.lower[j], RowTag{"lower bound", std::nullopt});
      }
      if (extra.upper[j]) {
        extended.add_row(unit_vector(n, j), *extra.upper[j], RowTag{"upper bound", std::nullopt});
      }
    }
    work = &extended;
  }
  const std::size_t m = work->num_rows();

  SolveResult result{Budget{}, {}};
  SolveStats& st = result.stats;
  auto finish = [&](auto outcome) {
    st.total_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    result.outcome = std::move(outcome);
    return result;
  };

  Simplex lp(n);
  for (std::size_t i = 0; i < m; ++i) lp.push_row(work->A().row(i), work->b()[i]);

  struct Frame {
    std::size_t node;
    std::size_t var;
    Integer bound;
    bool high;
  };
  std::vector<UnsatCertificate::Node> nodes;
  std::vector<Frame> stack;

  for (;;) {
    // Evaluate the node at depth stack.size().
    if (st.nodes >= opt.branch_limit) return finish(Budget{"branch limit reached"});
    if (Clock::now() - start > opt.time_budget) return finish(Budget{"time budget exhausted"});
    ++st.nodes;
    const std::size_t depth = stack.size();
    st.max_depth = std::max(st.max_depth, depth);
    CheckOutcome out = lp.check();
    st.lp_pivots = lp.pivot_count();

    if (std::holds_alternative<LpFeasible>(out)) {
      const Vector p = lp.point();
      const std::optional<std::size_t> j = branch_variable(*work, p, opt.branch_rule);
      if (!j) {
        Model model{p};
        if (!check_model(*work, model)) throw std::logic_error("branch-and-bound model fails verification");
        return finish(Sat{std::move(model)});
      }
      if (depth >= opt.depth_limit) return finish(Budget{"depth limit reached"});
      const Integer k = floor_of(p[*j]);
      nodes.push_back({SplitInequality{unit_vector(n, *j), k}, 0, 0, {}});
      stack.push_back({nodes.size() - 1, *j, k, false});
      lp.push_bound_scope();
      lp.set_upper(*j, Rational(k), depth);
      continue;
    }

    // Refuted: y over the rows and the path bounds 0..depth-1.
    FarkasCertificate leaf{explanation_multipliers(std::get<LpInfeasible>(out).why, m, depth), {}};
    std::optional<std::size_t> subtree;
    for (;;) {
      if (stack.empty()) {
        UnsatCertificate cert = subtree ? compact(nodes, *subtree) : UnsatCertificate::from_farkas(std::move(leaf));
        if (!check_refutation(*work, cert)) {
          throw std::logic_error("branch-and-bound refutation fails verification");
        }
        return finish(Unsat{std::move(cert)});
      }
      Frame& f = stack.back();
      const std::size_t d = stack.size() - 1;
      if (!subtree && sgn(leaf.y[m + d]) == 0) {
        // The split at this frame is not needed: the leaf refutes its parent.
        leaf.y.resize(m + d);
        lp.pop_bound_scope();
        stack.pop_back();
        continue;
      }
      std::size_t child;
      if (subtree) {
        child = *subtree;
      } else {
        nodes.push_back({std::nullopt, 0, 0, leaf.compacted()});
        child = nodes.size() - 1;
      }
      lp.pop_bound_scope();
      if (!f.high) {
        nodes[f.node].low = child;
        f.high = true;
        lp.push_bound_scope();
        lp.set_lower(f.var, Rational(f.bound + 1), d);
        break;
      }
      nodes[f.node].high = child;
      subtree = f.node;
      stack.pop_back();
    }
  }
}

}  // namespace meh
