#include <gtest/gtest.h>

#include "meh/mixed_solver.hpp"
#include "meh/oracle.hpp"
#include "support/generators.hpp"

namespace meh {
namespace {

ConstraintSystem running_example(VarKind kind) {
  ConstraintSystem sys({{"x1", kind}, {"x2", kind}});
  sys.add_row(Vector{3, -3}, 2);
  sys.add_row(Vector{-3, 3}, -1);
  return sys;
}

TEST(Solve, RunningExampleIntegerIsUnsat) {
  const SolveResult r = solve(running_example(VarKind::Integer));
  ASSERT_TRUE(r.is_unsat());
  EXPECT_TRUE(check_refutation(running_example(VarKind::Integer), std::get<Unsat>(r.outcome).certificate));
}

TEST(Solve, RunningExampleRationalIsSat) {
  const SolveResult r = solve(running_example(VarKind::Rational));
  ASSERT_TRUE(r.is_sat());
}

TEST(Solve, RunningExampleDivergesWithoutTransform) {
  SolveOptions opt;
  opt.transforms_enabled = false;
  opt.branch_limit = 1000;
  const SolveResult r = solve(running_example(VarKind::Integer), opt);
  EXPECT_TRUE(r.is_budget());
}

ConstraintSystem integer_system(std::size_t n, const std::vector<std::pair<Vector, Rational>>& rows,
                                VarKind kind = VarKind::Integer) {
  std::vector<VarInfo> vars;
  for (std::size_t j = 0; j < n; ++j) vars.push_back({"x" + std::to_string(j + 1), kind});
  ConstraintSystem sys(vars);
  for (const auto& [a, b] : rows) sys.add_row(a, b);
  return sys;
}

TEST(PropagateBounds, SingleRow) {
  const VarBounds box = propagate_bounds(Matrix{{3}}, Vector{1}, Vector{2});
  EXPECT_EQ(box.lower[0], Rational(1, 3));
  EXPECT_EQ(box.upper[0], Rational(2, 3));
}

TEST(PropagateBounds, TwoSteps) {
  const VarBounds box = propagate_bounds(Matrix{{1, 0}, {1, 1}}, Vector{0, 0}, Vector{1, 1});
  EXPECT_EQ(box.lower[0], Rational(0));
  EXPECT_EQ(box.upper[0], Rational(1));
  EXPECT_EQ(box.lower[1], Rational(-1));
  EXPECT_EQ(box.upper[1], Rational(1));
}

TEST(PropagateBounds, GapColumnGetsNoBounds) {
  const VarBounds box = propagate_bounds(Matrix{{3, 0}, {-3, 0}}, Vector{1, -2}, Vector{2, -1});
  EXPECT_TRUE(box.finite(0));
  EXPECT_FALSE(box.lower[1].has_value());
  EXPECT_FALSE(box.upper[1].has_value());
}

TEST(PropagateBounds, RejectsNonTriangular) {
  EXPECT_THROW(propagate_bounds(Matrix{{1, 1}}, Vector{0}, Vector{1}), std::invalid_argument);
}

TEST(BranchAndBound, UnitInterval) {
  const ConstraintSystem sys = integer_system(1, {{{1}, 1}, {{-1}, 0}});
  const SolveResult r = branch_and_bound(sys, VarBounds(1), SolveOptions{});
  ASSERT_TRUE(r.is_sat());
  EXPECT_TRUE(check_model(sys, std::get<Sat>(r.outcome).model));
}

TEST(BranchAndBound, ThirdsNeedOneBranchPair) {
  const ConstraintSystem sys = integer_system(1, {{{3}, 2}, {{-3}, -1}});
  VarBounds extra(1);
  extra.lower[0] = Rational(1, 3);
  extra.upper[0] = Rational(2, 3);
  const SolveResult r = branch_and_bound(sys, extra, SolveOptions{});
  ASSERT_TRUE(r.is_unsat());
  EXPECT_LE(r.stats.nodes, 3u);
  ConstraintSystem extended = sys;
  extended.add_row(Vector{-1}, Rational(-1, 3));
  extended.add_row(Vector{1}, Rational(2, 3));
  const UnsatCertificate& cert = std::get<Unsat>(r.outcome).certificate;
  EXPECT_TRUE(check_refutation(extended, cert));
  EXPECT_EQ(cert.leaf_count(), 2u);
}

TEST(BranchAndBound, RefutationWithoutBranchingIsFarkas) {
  const ConstraintSystem sys = integer_system(1, {{{1}, 0}, {{-1}, -1}});
  const SolveResult r = branch_and_bound(sys, VarBounds(1), SolveOptions{});
  ASSERT_TRUE(r.is_unsat());
  EXPECT_TRUE(std::get<Unsat>(r.outcome).certificate.is_farkas());
}

TEST(CubeTest, Examples) {
  // Any rational point of x1 + x2 <= -1 rounds into x1 + x2 <= 0.
  const std::optional<Model> a = unit_cube_test(integer_system(2, {{{1, 1}, 0}}));
  ASSERT_TRUE(a.has_value());
  EXPECT_LE(a->values[0] + a->values[1], -1);

  const std::optional<Model> b = unit_cube_test(integer_system(1, {{{1}, 1}, {{-1}, 0}}));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->values, (Vector{0}));

  const ConstraintSystem rational = integer_system(2, {{{1, 2}, 3}, {{-1, 0}, 0}}, VarKind::Rational);
  const std::optional<Model> c = unit_cube_test(rational);
  ASSERT_TRUE(c.has_value());
  EXPECT_TRUE(check_model(rational, *c));

  EXPECT_FALSE(unit_cube_test(integer_system(1, {{{3}, 2}, {{-3}, -1}})).has_value());
}

ConstraintSystem running_example_with_free_row(VarKind kind) {
  ConstraintSystem sys = running_example(kind);
  sys.add_row(Vector{1, 1}, 10);
  return sys;
}

TEST(MixedExtension, RationalRunningExampleWithFreeRow) {
  const ConstraintSystem sys = running_example_with_free_row(VarKind::Rational);
  const SplitSystem sp = split(sys, classify(sys));
  const BatchMehnf form = batch_mehnf(sp.bounded.A(), sys.num_rational());
  const ConstraintSystem t = double_bounded_system(sp, form);
  const SolveResult inner = branch_and_bound(t, VarBounds(t.num_vars()), SolveOptions{});
  ASSERT_TRUE(inner.is_sat());
  const Model s = mixed_extension(sp, form, std::get<Sat>(inner.outcome).model);
  EXPECT_TRUE(check_model(sys, s));
}

TEST(MixedExtension, EmptyUnboundedPartIsVTimesT) {
  // Partially unbounded system whose rows are all bounded.
  const ConstraintSystem sys = running_example(VarKind::Integer);
  ConstraintSystem shifted = integer_system(2, {{{3, -3}, 3}, {{-3, 3}, 0}});
  const Classification cls = classify(shifted);
  ASSERT_EQ(cls.verdict, Verdict::PartiallyUnbounded);
  const SplitSystem sp = split(shifted, cls);
  ASSERT_EQ(sp.unbounded.num_rows(), 0u);
  const BatchMehnf form = batch_mehnf(sp.bounded.A(), 0);
  // Column 1 is a gap, so its entry of t is replaced by the cube test's 0.
  const Model t{{1, 0}};
  const Model s = mixed_extension(sp, form, t);
  EXPECT_EQ(s.values, form.V * t.values);
  EXPECT_TRUE(check_model(shifted, s));
  EXPECT_FALSE(check_model(sys, s));
}

TEST(ConvertCertificate, IntegerRunningExampleWithFreeRow) {
  const ConstraintSystem sys = running_example_with_free_row(VarKind::Integer);
  const SplitSystem sp = split(sys, classify(sys));
  const BatchMehnf form = batch_mehnf(sp.bounded.A(), 0);
  const ConstraintSystem t = double_bounded_system(sp, form);
  const SolveResult inner = branch_and_bound(t, VarBounds(t.num_vars()), SolveOptions{});
  ASSERT_TRUE(inner.is_unsat());
  EXPECT_TRUE(check_refutation(t, std::get<Unsat>(inner.outcome).certificate));
  const UnsatCertificate cert = convert_certificate(sp, form, std::get<Unsat>(inner.outcome).certificate, sys.num_rows());
  EXPECT_TRUE(check_refutation(sys, cert));
}

TEST(Solve, AbsolutelyUnboundedUsesCube) {
  const SolveResult r = solve(integer_system(2, {{{1, 1}, 0}}));
  ASSERT_TRUE(r.is_sat());
  EXPECT_EQ(r.stats.verdict, Verdict::AbsolutelyUnbounded);
  EXPECT_EQ(r.stats.nodes, 0u);
}

TEST(Solve, RationallyInfeasibleGivesFarkas) {
  const ConstraintSystem sys = integer_system(1, {{{1}, 0}, {{-1}, -1}, {{0}, 4}});
  const SolveResult r = solve(sys);
  ASSERT_TRUE(r.is_unsat());
  const UnsatCertificate& cert = std::get<Unsat>(r.outcome).certificate;
  ASSERT_TRUE(cert.is_farkas());
  EXPECT_TRUE(check_certificate(sys, cert.farkas()));
}

TEST(SolveProperty, AgreesWithEnumerationOnBoxes) {
  Rng rng(61);
  for (int k = 0; k < 120; ++k) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
    const testing::BoxedInstance inst =
        testing::bounded_box_instance(rng, n, static_cast<std::size_t>(rng.uniform(1, 4)), 5, 3, 0.3);
    const SolveResult r = solve(inst.sys);
    ASSERT_FALSE(r.is_budget());
    EXPECT_EQ(r.is_sat(), brute_force_solve(inst.sys, inst.box).sat);
  }
}

TEST(SolveProperty, TransformsOnAndOffAgree) {
  Rng rng(62);
  SolveOptions off;
  off.transforms_enabled = false;
  off.branch_limit = 3000;
  int compared = 0;
  for (int k = 0; k < 150; ++k) {
    const ConstraintSystem sys = testing::mixed_random_instance(rng, 5);
    const SolveResult on = solve(sys);
    ASSERT_FALSE(on.is_budget());
    const SolveResult raw = solve(sys, off);
    if (raw.is_budget()) continue;
    ++compared;
    EXPECT_EQ(on.is_sat(), raw.is_sat());
  }
  EXPECT_GT(compared, 50);
}

TEST(SolveProperty, FirstFractionalRuleAgrees) {
  Rng rng(63);
  SolveOptions first;
  first.branch_rule = BranchRule::FirstFractional;
  for (int k = 0; k < 80; ++k) {
    const ConstraintSystem sys = testing::mixed_random_instance(rng, 5);
    const SolveResult a = solve(sys);
    const SolveResult b = solve(sys, first);
    ASSERT_FALSE(a.is_budget());
    ASSERT_FALSE(b.is_budget());
    EXPECT_EQ(a.is_sat(), b.is_sat());
  }
}

}  // namespace
}  // namespace meh
