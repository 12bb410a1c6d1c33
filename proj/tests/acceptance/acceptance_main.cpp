// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. All instance streams are seeded; results are exact, so
// every comparison is with zero tolerance. Time limits are wall clock.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "meh/analysis.hpp"
#include "meh/generators.hpp"
#include "meh/mehnf.hpp"
#include "meh/mixed_solver.hpp"
#include "meh/normal_form.hpp"
#include "meh/oracle.hpp"
#include "support/generators.hpp"

namespace {

using namespace meh;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Soundness tally shared by every criterion that solves something.
struct Soundness {
  std::size_t sat = 0, sat_ok = 0, unsat = 0, unsat_ok = 0;

  void record(const ConstraintSystem& original, const SolveResult& r) {
    if (const auto* s = std::get_if<Sat>(&r.outcome)) {
      ++sat;
      if (check_model(original, s->model)) ++sat_ok;
    } else if (const auto* u = std::get_if<Unsat>(&r.outcome)) {
      ++unsat;
      const UnsatCertificate& c = u->certificate;
      const bool ok = c.is_farkas() ? check_certificate(original, c.farkas()) : check_refutation(original, c);
      if (ok) ++unsat_ok;
    }
  }
};

Soundness soundness;

SolveResult solve_checked(const ConstraintSystem& sys, const SolveOptions& opt = {}) {
  SolveResult r = solve(sys, opt);
  soundness.record(sys, r);
  return r;
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// Runs a criterion body, turning an escaped exception into a FAIL line.
void run(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

ConstraintSystem running_example() {
  ConstraintSystem sys({{"x1", VarKind::Integer}, {"x2", VarKind::Integer}});
  sys.add_row(Vector{3, -3}, 2);
  sys.add_row(Vector{-3, 3}, -1);
  return sys;
}

void criterion_1() {
  const ConstraintSystem sys = running_example();
  SolveOptions off;
  off.transforms_enabled = false;
  off.branch_limit = 1000;
  auto t0 = Clock::now();
  const SolveResult plain = solve_checked(sys, off);
  const double plain_s = since(t0);
  t0 = Clock::now();
  const SolveResult on = solve_checked(sys);
  const double on_s = since(t0);
  bool cert_ok = false;
  if (const auto* u = std::get_if<Unsat>(&on.outcome)) cert_ok = check_refutation(sys, u->certificate);
  std::ostringstream d;
  d << "no-transform " << (plain.is_budget() ? "budget" : "answered") << " in " << plain_s
    << " s (limit 5); default " << (on.is_unsat() ? "unsat" : "not unsat") << " in " << on_s
    << " s (limit 0.1), certificate " << (cert_ok ? "valid" : "invalid");
  report(1, plain.is_budget() && plain_s < 5.0 && on.is_unsat() && on_s < 0.1 && cert_ok, d.str());
}

void criterion_2() {
  Rng rng(20'001);
  std::size_t budget = 0, slow = 0;
  std::size_t by_class[3] = {0, 0, 0};
  std::size_t rational_unsat = 0;
  double worst = 0;
  for (int k = 0; k < 500; ++k) {
    const ConstraintSystem sys = testing::mixed_random_instance(rng, 20);
    SolveOptions opt;
    opt.time_budget = std::chrono::milliseconds(10'000);
    const auto t0 = Clock::now();
    const SolveResult r = solve_checked(sys, opt);
    const double s = since(t0);
    worst = std::max(worst, s);
    if (r.is_budget()) ++budget;
    if (s >= 10.0) ++slow;
    if (r.stats.verdict) {
      ++by_class[static_cast<int>(*r.stats.verdict)];
    } else {
      ++rational_unsat;
    }
  }
  std::ostringstream d;
  d << "500 instances, budget " << budget << ", over 10 s " << slow << ", worst " << worst
    << " s; bounded " << by_class[0] << ", absolutely-unbounded " << by_class[1] << ", partially-unbounded "
    << by_class[2] << ", rationally infeasible " << rational_unsat;
  report(2, budget == 0 && slow == 0 && by_class[0] > 0 && by_class[1] > 0 && by_class[2] > 0, d.str());
}

// Oracle over the double-bounded system of a partially unbounded instance:
// enumerate the propagated box of its non-gap columns, gap columns fixed to 0.
std::optional<bool> transformed_oracle(const ConstraintSystem& sys) {
  Classification cls;
  try {
    cls = classify(sys);
  } catch (const InfeasibleSystemError&) {
    return std::nullopt;
  }
  if (cls.verdict != Verdict::PartiallyUnbounded) return std::nullopt;
  const SplitSystem sp = split(sys, cls);
  const BatchMehnf form = batch_mehnf(sp.bounded.A(), sys.num_rational());
  const ConstraintSystem t = double_bounded_system(sp, form);
  const std::size_t m2 = sp.bounded.num_rows();
  Vector lo(m2), hi(m2);
  for (std::size_t i = 0; i < m2; ++i) {
    hi[i] = t.b()[i];
    lo[i] = -t.b()[m2 + i];
  }
  VarBounds box = propagate_bounds(form.H, lo, hi);
  for (std::size_t j = 0; j < box.size(); ++j) {
    if (form.H.is_zero_column(j)) box.lower[j] = box.upper[j] = Rational(0);
  }
  try {
    return brute_force_solve(t, box).sat;
  } catch (const BoxTooLarge&) {
    return std::nullopt;
  }
}

void criterion_3() {
  Rng rng(30'001);
  std::size_t mismatches = 0, sat = 0, kinds[3] = {0, 0, 0};
  std::size_t admitted = 0;
  while (admitted < 200) {
    const std::size_t kind = admitted < 100 ? 0 : admitted < 160 ? 1 : 2;
    ConstraintSystem sys;
    bool expected = false;
    if (kind == 0) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 5));
      testing::BoxedInstance inst =
          testing::bounded_box_instance(rng, n, static_cast<std::size_t>(rng.uniform(1, 5)), 6, 3, 0.3);
      expected = brute_force_solve(inst.sys, inst.box).sat;
      sys = std::move(inst.sys);
    } else if (kind == 1) {
      testing::BoxedInstance inst = testing::rational_tail_instance(
          rng, static_cast<std::size_t>(rng.uniform(1, 4)), static_cast<std::size_t>(rng.uniform(1, 3)),
          static_cast<std::size_t>(rng.uniform(1, 5)), 6, 3);
      expected = brute_force_solve(inst.sys, inst.box).sat;
      sys = std::move(inst.sys);
    } else {
      ConstraintSystem cand = rng.bernoulli(0.5)
                                  ? testing::unsat_slab_instance(rng, static_cast<std::size_t>(rng.uniform(2, 4)),
                                                                 static_cast<std::size_t>(rng.uniform(0, 2)), 4)
                                  : testing::mixed_random_instance(rng, 5);
      const std::optional<bool> verdict = transformed_oracle(cand);
      if (!verdict) continue;
      expected = *verdict;
      sys = std::move(cand);
    }
    ++admitted;
    ++kinds[kind];
    const SolveResult r = solve_checked(sys);
    if (r.is_budget() || r.is_sat() != expected) ++mismatches;
    if (expected) ++sat;
  }
  std::ostringstream d;
  d << "200 instances (" << kinds[0] << " boxed, " << kinds[1] << " rational tail, " << kinds[2]
    << " via double-bounded box), " << sat << " sat, mismatches " << mismatches;
  report(3, mismatches == 0, d.str());
}

void criterion_5() {
  Rng rng(50'001);
  std::size_t bad = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = static_cast<std::size_t>(rng.uniform(1, 8));
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 8));
    const std::size_t n1 = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n)));
    const Matrix d = testing::random_matrix(rng, m, n, 9);
    const BatchMehnf f = batch_mehnf(d, n1);
    const bool ok = is_mehnf(f.H, n1, f.rank) && is_mctm(f.V, n1, n - n1) &&
                    f.H == d.select_rows(f.row_perm) * f.V;
    if (!ok) ++bad;
  }
  report(5, bad == 0, "200 matrices, violations " + std::to_string(bad));
}

std::string verdict_of(const SolveResult& r) { return r.is_sat() ? "sat" : r.is_unsat() ? "unsat" : "budget"; }

void criterion_6() {
  Rng rng(60'001);
  std::size_t broken_steps = 0, disagreements = 0, steps = 0, backtracks = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n1 = static_cast<std::size_t>(rng.uniform(0, 3));
    const std::size_t n2 = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t n = n1 + n2;
    MehState state(n1, n2);
    const int length = static_cast<int>(rng.uniform(4, 14));
    for (int s = 0; s < length; ++s) {
      if (state.size() > 0 && rng.bernoulli(0.3)) {
        state.backtrack();
        ++backtracks;
      } else {
        const Vector a = testing::random_nonzero_vector(rng, n, 5);
        state.extend(a, rng.uniform(-6, 12));
      }
      ++steps;
      if (!state.invariants_hold()) ++broken_steps;
    }
    std::vector<VarInfo> vars;
    for (std::size_t j = 0; j < n; ++j) {
      vars.push_back({"v" + std::to_string(j + 1), j < n1 ? VarKind::Rational : VarKind::Integer});
    }
    ConstraintSystem incremental(vars), batch(vars), original(vars);
    for (std::size_t i = 0; i < state.size(); ++i) {
      incremental.add_row(state.H().row(i), state.u()[i]);
      original.add_row(state.inserted().row(i), state.inserted_bounds()[i]);
    }
    const BatchMehnf f = batch_mehnf(state.inserted(), n1);
    for (std::size_t i = 0; i < f.H.rows(); ++i) batch.add_row(f.H.row(i), state.inserted_bounds()[f.row_perm[i]]);
    const std::string vi = verdict_of(solve_checked(incremental));
    const std::string vb = verdict_of(solve_checked(batch));
    const std::string vo = verdict_of(solve_checked(original));
    if (vi != vb || vb != vo || vi == "budget") ++disagreements;
  }
  std::ostringstream d;
  d << "100 sequences, " << steps << " steps (" << backtracks << " backtracks), invariant violations "
    << broken_steps << ", verdict disagreements " << disagreements;
  report(6, broken_steps == 0 && disagreements == 0, d.str());
}

void criterion_7() {
  std::size_t verified = 0, total = 0;
  for (std::uint64_t seed = 1; total < 100; ++seed) {
    GenParams p;
    p.seed = 70'000 + seed;
    p.vars = 3 + seed % 5;
    p.bounded_dirs = 1 + seed % (p.vars - 1);
    p.unbounded_rows = 2 + seed % 3;
    const ConstraintSystem sys = gen_random_unbounded(p);
    ++total;
    const Classification cls = classify(sys);
    const SplitSystem sp = split(sys, cls);
    const BatchMehnf form = batch_mehnf(sp.bounded.A(), sys.num_rational());
    const ConstraintSystem t = double_bounded_system(sp, form);
    const SolveResult inner = branch_and_bound(t, VarBounds{}, SolveOptions{});
    const auto* sat = std::get_if<Sat>(&inner.outcome);
    if (!sat) continue;
    const Model s = mixed_extension(sp, form, sat->model);
    if (check_model(sys, s)) ++verified;
  }
  std::ostringstream d;
  d << verified << "/" << total << " extended models satisfy the full system";
  report(7, verified == total, d.str());
}

void criterion_8() {
  Rng rng(80'001);
  std::size_t agree = 0, partial = 0;
  for (int k = 0; k < 50; ++k) {
    const ConstraintSystem sys = testing::unsat_slab_instance(rng, static_cast<std::size_t>(rng.uniform(1, 4)),
                                                              static_cast<std::size_t>(rng.uniform(0, 3)), 5);
    const ConstraintSystem slacked = gen_slack(sys);
    if (classify(slacked).verdict == Verdict::PartiallyUnbounded) ++partial;
    const SolveResult a = solve_checked(sys);
    const SolveResult b = solve_checked(slacked);
    if (a.is_unsat() && b.is_unsat()) ++agree;
  }
  std::ostringstream d;
  d << "50 unsat instances, slacked partially-unbounded " << partial << "/50, both unsat " << agree << "/50";
  report(8, agree == 50 && partial == 50, d.str());
}

void criterion_9() {
  Rng rng(90'001);
  std::size_t ok = 0, classified = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 10));
    const ConstraintSystem sys = testing::absolutely_unbounded_instance(
        rng, n, static_cast<std::size_t>(rng.uniform(1, 3 * static_cast<std::int64_t>(n))), 7, 0.3);
    if (classify(sys).verdict == Verdict::AbsolutelyUnbounded) ++classified;
    const std::optional<Model> m = unit_cube_test(sys);
    if (m && check_model(sys, *m)) ++ok;
  }
  std::ostringstream d;
  d << "100 instances, classified absolutely-unbounded " << classified << ", verified cube solutions " << ok;
  report(9, ok == 100 && classified == 100, d.str());
}

}  // namespace

int main() {
  const auto start = Clock::now();
  run(1, criterion_1);
  run(2, criterion_2);
  run(3, criterion_3);
  run(5, criterion_5);
  run(6, criterion_6);
  run(7, criterion_7);
  run(8, criterion_8);
  run(9, criterion_9);
  {
    std::ostringstream d;
    d << "sat " << soundness.sat_ok << "/" << soundness.sat << " models verified, unsat " << soundness.unsat_ok
      << "/" << soundness.unsat << " certificates verified (all runs above)";
    report(4, soundness.sat_ok == soundness.sat && soundness.unsat_ok == soundness.unsat &&
                  soundness.sat + soundness.unsat > 0,
           d.str());
  }
  const double total = since(start);
  report(10, total < 600.0, "suite wall time " + std::to_string(total) + " s (limit 600)");
  return failures == 0 ? 0 : 1;
}
