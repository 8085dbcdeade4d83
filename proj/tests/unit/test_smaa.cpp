#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "smaa_choquet/statement_syntax.hpp"
#include "smaa_choquet/smaa.hpp"

using namespace smaa_choquet;

namespace {

Problem point_problem(const PointMatrix& m) {
  Problem p;
  for (std::size_t i = 0; i < m.front().size(); ++i) {
    p.criteria.push_back("g" + std::to_string(i + 1));
    p.directions.push_back(Direction::kMaximize);
  }
  for (std::size_t k = 0; k < m.size(); ++k) {
    p.alternatives.push_back("a" + std::to_string(k + 1));
    std::vector<IntervalEvaluation> row;
    for (double x : m[k]) row.push_back({x, x});
    p.evaluations.push_back(row);
  }
  return p;
}

std::vector<PreferenceStatement> parsed(const ProblemFile& file) {
  std::vector<PreferenceStatement> out;
  for (const auto& t : file.preferences) {
    out.push_back(parse_statement(t, file.problem.criteria, file.problem.alternatives));
  }
  return out;
}

RunConfig quick(std::size_t iterations = 20'000) {
  RunConfig c;
  c.iterations = iterations;
  c.seed = 2024;
  c.burn_in = 500;
  c.workers = 3;
  return c;
}

void expect_invariants(const SmaaResults& r) {
  const std::size_t l = r.alternatives;
  for (std::size_t k = 0; k < l; ++k) {
    double row = 0.0;
    for (double b : r.rank_acceptability[k]) row += b;
    EXPECT_NEAR(row, 100.0, 0.01) << k;
    EXPECT_EQ(r.rank_acceptability[k][0] > 0.0, r.central[k].has_value()) << k;
    EXPECT_EQ(r.pref_strict[k][k], 0.0);
    for (std::size_t h = 0; h < l; ++h) {
      EXPECT_NEAR(r.pref_strict[h][k] + r.pref_strict[k][h] + r.pref_indiff[h][k], 100.0, 0.01);
    }
  }
  const auto bary = MobiusCapacity::from_coordinates(r.criteria, r.barycenter);
  EXPECT_TRUE(validate(bary, 1e-9).empty());
}

}  // namespace

TEST(Ranks, TiedValuesShareTheBestRank) {
  EXPECT_EQ(ranks({3, 5, 5, 1}), (std::vector<std::size_t>{3, 1, 1, 4}));
  EXPECT_EQ(rank_of({2.0}, 0), 1u);
}

TEST(Tally, CentralCapacityIsTheMeanOfFirstRankCapacities) {
  SmaaTally t(2, 3);
  std::vector<std::size_t> scratch;
  t.record({2.0, 1.0}, {0.2, 0.6, 0.2}, scratch);
  t.record({3.0, 1.0}, {0.4, 0.4, 0.2}, scratch);
  t.record({1.0, 3.0}, {0.1, 0.1, 0.8}, scratch);
  const auto r = summarize(t, 2);
  ASSERT_TRUE(r.central[0]);
  EXPECT_NEAR((*r.central[0])[0], 0.3, 1e-15);
  EXPECT_NEAR((*r.central[0])[1], 0.5, 1e-15);
  EXPECT_NEAR((*r.central[0])[2], 0.2, 1e-15);
  EXPECT_EQ(*r.central[1], (std::vector<double>{0.1, 0.1, 0.8}));
  EXPECT_NEAR(r.barycenter[2], 0.4, 1e-15);
  EXPECT_NEAR(r.rank_acceptability[0][0], 200.0 / 3.0, 1e-12);
}

TEST(Tally, MergeOrderDoesNotMatter) {
  std::vector<SmaaTally> parts(3, SmaaTally(3, 3));
  std::vector<std::size_t> scratch;
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (int i = 0; i < 50; ++i) parts[p].record({u(gen), u(gen), u(gen)}, {u(gen), u(gen), u(gen)}, scratch);
    parts[p].record_infeasible();
  }
  SmaaTally forward(3, 3), backward(3, 3);
  for (std::size_t p = 0; p < 3; ++p) forward.merge(parts[p]);
  for (std::size_t p = 3; p-- > 0;) backward.merge(parts[p]);
  EXPECT_EQ(forward.total, 153u);
  EXPECT_EQ(forward.feasible, 150u);
  EXPECT_EQ(forward.rank_counts, backward.rank_counts);
  EXPECT_EQ(forward.strict_counts, backward.strict_counts);
  EXPECT_EQ(forward.indiff_counts, backward.indiff_counts);
  for (std::size_t t = 0; t < forward.capacity_sum.size(); ++t) {
    EXPECT_NEAR(forward.capacity_sum[t], backward.capacity_sum[t], 1e-12);
  }
}

TEST(Tally, TiesAreIndifferenceAndShareRanks) {
  SmaaTally t(2, 3);
  std::vector<std::size_t> scratch;
  t.record({1.0, 1.0}, {0.5, 0.5, 0.0}, scratch);
  const auto r = summarize(t, 2);
  EXPECT_EQ(r.rank_acceptability[0][0], 100.0);
  EXPECT_EQ(r.rank_acceptability[1][0], 100.0);
  EXPECT_EQ(r.pref_indiff[0][1], 100.0);
}

TEST(Run, SingleAlternativeIsAlwaysFirst) {
  const auto r = run(point_problem({{3, 4, 5}}), {}, quick(2000));
  EXPECT_EQ(r.rank_acceptability[0][0], 100.0);
  EXPECT_EQ(r.confidence[0], 100.0);
  const auto e = extreme_ranks(r.rank_acceptability);
  EXPECT_EQ(e[0].best, 1u);
  EXPECT_EQ(e[0].worst, 1u);
}

TEST(Run, DominanceGivesCertainPreference) {
  const auto r = run(point_problem({{5, 6, 7}, {4, 6, 2}, {1, 1, 1}}), {}, quick(5000));
  EXPECT_EQ(r.pref_strict[0][2], 100.0);
  EXPECT_EQ(r.pref_strict[2][0], 0.0);
  EXPECT_EQ(r.pref_indiff[0][2], 0.0);
  EXPECT_EQ(r.rank_acceptability[2][2], 100.0);
  const auto naror = naror_approx(r.pref_strict, r.pref_indiff);
  EXPECT_TRUE(naror.necessary[0][2]);
  EXPECT_FALSE(naror.possible[2][0]);
  expect_invariants(r);
}

TEST(Run, DidacticInvariantsAndAccounting) {
  const auto file = fixtures::load("didactic.json");
  const auto r = run(file.problem, parsed(file), quick());
  expect_invariants(r);
  EXPECT_EQ(r.iterations_total(), 20'000u);
  EXPECT_EQ(r.iterations_feasible(), r.iterations_total());
  EXPECT_FALSE(r.metadata.per_iteration_constraints);
  ASSERT_TRUE(r.metadata.epsilon_star);
  EXPECT_GT(*r.metadata.epsilon_star, 0.0);
  for (std::size_t k = 0; k < r.alternatives; ++k) {
    if (r.confidence[k]) EXPECT_TRUE(*r.confidence[k] == 0.0 || *r.confidence[k] == 100.0);
  }
  EXPECT_EQ(extreme_ranks(r.rank_acceptability)[8].worst, 18u);
}

TEST(Run, SeededRerunsAreIdentical) {
  const auto file = fixtures::load("didactic_alternatives.json");
  const auto a = run(file.problem, parsed(file), quick(5000));
  const auto b = run(file.problem, parsed(file), quick(5000));
  EXPECT_EQ(a.tally.rank_counts, b.tally.rank_counts);
  EXPECT_EQ(a.tally.strict_counts, b.tally.strict_counts);
  EXPECT_EQ(a.tally.capacity_sum, b.tally.capacity_sum);
  EXPECT_EQ(a.tally.central_sums, b.tally.central_sums);
  auto other = quick(5000);
  other.seed = 2025;
  EXPECT_NE(run(file.problem, parsed(file), other).tally.capacity_sum, a.tally.capacity_sum);
}

TEST(Run, ScalingEvaluationsByAPositiveConstantChangesNothing) {
  const auto file = fixtures::load("didactic.json");
  auto scaled = file.problem;
  for (auto& row : scaled.evaluations) {
    for (auto& e : row) e = {4.0 * e.lo, 4.0 * e.hi};
  }
  // Alternative statements would scale ε; keep to criterion statements.
  const auto a = run(file.problem, parsed(file), quick(5000));
  const auto b = run(scaled, parsed(file), quick(5000));
  EXPECT_EQ(a.tally.rank_counts, b.tally.rank_counts);
  EXPECT_EQ(a.tally.strict_counts, b.tally.strict_counts);
  EXPECT_EQ(a.tally.indiff_counts, b.tally.indiff_counts);
}

TEST(Run, MinimizedCriterionNeedsAScale) {
  auto p = point_problem({{1, 2}, {2, 1}});
  p.directions[1] = Direction::kMinimize;
  EXPECT_THROW(run(p, {}, quick(100)), std::invalid_argument);
}

TEST(Run, IncompatibleStatementsThrow) {
  const auto p = point_problem({{1, 2}, {2, 1}});
  const std::vector<PreferenceStatement> s = {ComparisonStatement{ComparisonKind::kStrict, 0, 1},
                                              ComparisonStatement{ComparisonKind::kStrict, 1, 0}};
  EXPECT_THROW(run(p, s, quick(100)), IncompatibleSystem);
}

TEST(Run, CancellationStopsTheRun) {
  RunControl control;
  control.cancel = true;
  const auto file = fixtures::load("didactic.json");
  EXPECT_THROW(run(file.problem, parsed(file), quick(), &control), RunCancelled);
}

TEST(Run, ProgressReachesTheIterationCount) {
  RunControl control;
  const auto file = fixtures::load("didactic.json");
  run(file.problem, parsed(file), quick(3000), &control);
  EXPECT_EQ(control.completed.load(), 3000u);
}

TEST(IntervalRun, TwoEquiprobableMatricesGiveHalfConfidence) {
  // a1 wins exactly when its first evaluation is drawn as 2.
  Problem p = point_problem({{0, 1.5}, {1.5, 1.5}});
  p.evaluations[0][0] = {1, 2};
  auto config = quick(4000);
  config.mode = UncertaintyCase::kInterval;
  config.eval_sampling = EvalSampling::kInteger;
  config.confidence_iterations = 10'000;
  const auto r = run(p, {}, config);
  ASSERT_TRUE(r.confidence[0]);
  EXPECT_NEAR(*r.confidence[0], 50.0, 1.0);
  EXPECT_NEAR(r.rank_acceptability[0][0], 50.0, 2.0);
  EXPECT_EQ(r.iterations_feasible(), r.iterations_total());
  expect_invariants(r);
}

TEST(IntervalRun, DegenerateIntervalsBehaveLikePointEvaluations) {
  auto p = point_problem({{3, 1}, {1, 3}, {2, 2}});
  auto config = quick(3000);
  config.mode = UncertaintyCase::kInterval;
  config.confidence_iterations = 500;
  const auto r = run(p, {}, config);
  for (std::size_t k = 0; k < 3; ++k) {
    if (r.confidence[k]) EXPECT_TRUE(*r.confidence[k] == 0.0 || *r.confidence[k] == 100.0);
  }
}

TEST(IntervalRun, ImpreciseFixtureWithIntegerSampling) {
  const auto file = fixtures::load("imprecise.json");
  auto config = quick(5000);
  config.mode = UncertaintyCase::kInterval;
  config.eval_sampling = EvalSampling::kInteger;
  config.confidence_iterations = 1000;
  const auto r = run(file.problem, parsed(file), config);
  expect_invariants(r);
  EXPECT_EQ(r.iterations_feasible(), r.iterations_total());
  for (std::size_t k = 0; k < r.alternatives; ++k) {
    if (r.confidence[k]) {
      EXPECT_GE(*r.confidence[k], 0.0);
      EXPECT_LE(*r.confidence[k], 100.0);
    }
  }
}

TEST(IntervalRun, AlternativeStatementsFilterSampledMatrices) {
  // C(a1) = m1 x against C(a2) = 2 m1: only the draws 3 and 4 admit a1 > a2.
  Problem p = point_problem({{0, 0}, {2, 0}});
  p.evaluations[0][0] = {0, 4};
  auto config = quick(4000);
  config.mode = UncertaintyCase::kInterval;
  config.eval_sampling = EvalSampling::kInteger;
  config.inner_steps = 20;
  config.confidence_iterations = 100;
  const auto r = run(p, {ComparisonStatement{ComparisonKind::kStrict, 0, 1}}, config);
  EXPECT_TRUE(r.metadata.per_iteration_constraints);
  EXPECT_NEAR(static_cast<double>(r.iterations_feasible()) / r.iterations_total(), 0.4, 0.03);
  EXPECT_EQ(r.rank_acceptability[0][0], 100.0);
  expect_invariants(r);
}

TEST(IntervalRun, NoCompatibleMatrixThrows) {
  Problem p = point_problem({{0, 0}, {3, 3}});
  p.evaluations[0] = {{1, 2}, {1, 2}};
  auto config = quick(200);
  config.mode = UncertaintyCase::kInterval;
  EXPECT_THROW(run(p, {ComparisonStatement{ComparisonKind::kStrict, 0, 1}}, config), NoFeasibleIterations);
}

TEST(HeteroRun, CarsInvariants) {
  const auto file = fixtures::load("cars.json");
  auto config = quick(3000);
  config.mode = UncertaintyCase::kHeteroScale;
  config.confidence_iterations = 500;
  const auto r = run(file.problem, parsed(file), config);
  expect_invariants(r);
  EXPECT_GT(r.iterations_feasible(), 0u);
}

TEST(Naror, HalfSplitIsPossibleBothWays) {
  const std::vector<std::vector<double>> strict = {{0, 50}, {50, 0}};
  const std::vector<std::vector<double>> indiff = {{100, 0}, {0, 100}};
  const auto n = naror_approx(strict, indiff);
  EXPECT_TRUE(n.possible[0][1]);
  EXPECT_TRUE(n.possible[1][0]);
  EXPECT_FALSE(n.necessary[0][1]);
}

TEST(Barycenter, EmptySampleThrows) {
  EXPECT_THROW(barycenter(summarize(SmaaTally(2, 3), 2)), std::invalid_argument);
}
