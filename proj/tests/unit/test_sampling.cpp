#include <gtest/gtest.h>

#include <map>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "smaa_choquet/sampling.hpp"
#include "smaa_choquet/statement_syntax.hpp"

using namespace smaa_choquet;

namespace {

LinearRow ge(std::vector<double> a, double b) { return {std::move(a), Relation::kGreaterEqual, b}; }

SamplerRows unit_box(std::size_t d) {
  SamplerRows rows;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    rows.inequalities.push_back(ge(e, 0.0));
    e[i] = -1.0;
    rows.inequalities.push_back(ge(e, -1.0));
  }
  return rows;
}

LinearConstraintSystem didactic_system() {
  const auto file = fixtures::load("didactic_alternatives.json");
  std::vector<PreferenceStatement> statements;
  for (const auto& t : file.preferences) {
    statements.push_back(parse_statement(t, file.problem.criteria, file.problem.alternatives));
  }
  return compile_system(4, statements, &fixtures::didactic_matrix());
}

}  // namespace

TEST(EpsilonFreeze, CappedAtTenTimesTheThreshold) {
  EXPECT_DOUBLE_EQ(epsilon_freeze(0.2, 1e-6), 1e-5);
  EXPECT_DOUBLE_EQ(epsilon_freeze(4e-6, 1e-6), 2e-6);
}

TEST(SeedPoint, InteriorOfTheCompatiblePolytope) {
  const auto system = didactic_system();
  const auto seed = seed_point(system);
  EXPECT_GT(seed.epsilon_star, 0.0);
  EXPECT_GT(seed.margin, 0.0);
  EXPECT_GE(system.min_margin(seed.coords, seed.epsilon_star / 2.0), -1e-9);
}

TEST(SeedPoint, IncompatibleSystemThrowsWithEpsilonStar) {
  const auto system = compile_system(
      3, {ImportanceStatement{ImportanceKind::kStrict, 0, 1}, ImportanceStatement{ImportanceKind::kStrict, 1, 0}},
      nullptr);
  try {
    seed_point(system);
    FAIL();
  } catch (const IncompatibleSystem& e) {
    EXPECT_LE(e.epsilon_star(), 1e-9);
  }
}

TEST(NullSpaceBasis, OrthonormalAndOrthogonalToEqualities) {
  const auto rows = sampler_rows(didactic_system(), 1e-5);
  const auto eq = std::vector<LinearRow>{rows.equalities.begin(), rows.equalities.end()};
  const auto basis = null_space_basis(eq, 10);
  EXPECT_EQ(basis.size(), 10u - eq.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      double d = 0.0;
      for (std::size_t i = 0; i < 10; ++i) d += basis[a][i] * basis[b][i];
      EXPECT_NEAR(d, a == b ? 1.0 : 0.0, 1e-12);
    }
    for (const auto& r : eq) {
      double d = 0.0;
      for (std::size_t i = 0; i < 10; ++i) d += r.coefficients[i] * basis[a][i];
      EXPECT_NEAR(d, 0.0, 1e-12);
    }
  }
}

TEST(NullSpaceBasis, DropsDependentRows) {
  const std::vector<LinearRow> eq = {{{1, 1, 0}, Relation::kEqual, 1}, {{2, 2, 0}, Relation::kEqual, 2}};
  EXPECT_EQ(null_space_basis(eq, 3).size(), 2u);
}

TEST(PolytopeSampler, RejectsInfeasibleStart) {
  EXPECT_THROW(PolytopeSampler(unit_box(2), {1.5, 0.5}, 1), std::invalid_argument);
}

TEST(PolytopeSampler, EveryPointSatisfiesTheConstraints) {
  const auto system = didactic_system();
  const auto seed = seed_point(system);
  const double eps = epsilon_freeze(seed.epsilon_star);
  auto chain = PolytopeSampler::from_system(system, eps, seed.coords, 99);
  EXPECT_EQ(chain.free_dimension(), 9u);
  double worst = 0.0;
  for (int i = 0; i < 100'000; ++i) {
    const auto& x = chain.step();
    worst = std::min(worst, system.min_margin(x, eps));
  }
  EXPECT_GE(worst, -1e-9);
}

TEST(PolytopeSampler, BoxMarginalsAreUniform) {
  auto chain = PolytopeSampler(unit_box(3), {0.5, 0.5, 0.5}, 5);
  chain.burn_in(1000);
  std::vector<std::vector<double>> marg(3);
  for (int i = 0; i < 100'000; ++i) {
    const auto& x = chain.next(3);
    for (std::size_t d = 0; d < 3; ++d) marg[d].push_back(x[d]);
  }
  for (std::size_t d = 0; d < 3; ++d) EXPECT_LT(oracle::ks_uniform(marg[d], 0.0, 1.0), 0.01) << d;
}

TEST(PolytopeSampler, SimplexCentroid) {
  SamplerRows rows;
  rows.inequalities = {ge({1, 0, 0}, 0), ge({0, 1, 0}, 0), ge({0, 0, 1}, 0), ge({-1, -1, -1}, -1)};
  auto chain = PolytopeSampler(rows, {0.2, 0.2, 0.2}, 3);
  chain.burn_in(1000);
  std::vector<double> mean(3, 0.0);
  const int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const auto& x = chain.step();
    for (std::size_t d = 0; d < 3; ++d) mean[d] += x[d] / n;
  }
  for (double m : mean) EXPECT_NEAR(m, 0.25, 0.005);
}

TEST(PolytopeSampler, TwoCriteriaCapacitiesFillTheUnitSquare) {
  // m1 + m2 + m12 = 1 with the monotonicity rows is {(m1, m2) in [0,1]^2}.
  const auto system = compile_mb(2);
  const auto seed = seed_point(system);
  auto chain = PolytopeSampler::from_system(system, 0.0, seed.coords, 8);
  chain.burn_in(1000);
  std::vector<double> m1;
  double m12 = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) {
    const auto& x = chain.next(2);
    m1.push_back(x[0]);
    m12 += x[2] / n;
  }
  EXPECT_LT(oracle::ks_uniform(m1, 0.0, 1.0), 0.01);
  EXPECT_NEAR(m12, 0.0, 0.01);
}

TEST(PolytopeSampler, ThreeCriteriaMeanMatchesRejectionSampling) {
  const std::vector<PreferenceStatement> statements = {ImportanceStatement{ImportanceKind::kStrict, 0, 2},
                                                       InteractionStatement{InteractionKind::kSynergy, 0, 1}};
  const auto system = compile_system(3, statements, nullptr);
  const double eps = 0.05;

  // Oracle: uniform draws of (m1, m2, m3, m12, m13) in a bounding box, with
  // m23 closing the sum, kept when every row holds.
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> single(0.0, 1.0), pair(-1.0, 1.0);
  std::vector<double> ref(6, 0.0);
  std::size_t kept = 0;
  while (kept < 50'000) {
    std::vector<double> c = {single(gen), single(gen), single(gen), pair(gen), pair(gen), 0.0};
    c[5] = 1.0 - (c[0] + c[1] + c[2] + c[3] + c[4]);
    if (system.min_margin(c, eps) < 0.0) continue;
    for (std::size_t t = 0; t < 6; ++t) ref[t] += c[t];
    ++kept;
  }
  for (double& r : ref) r /= static_cast<double>(kept);

  const auto seed = seed_point(system);
  auto chain = PolytopeSampler::from_system(system, eps, seed.coords, 4);
  chain.burn_in(2000);
  std::vector<double> mean(6, 0.0);
  const int n = 300'000;
  for (int i = 0; i < n; ++i) {
    const auto& x = chain.step();
    for (std::size_t t = 0; t < 6; ++t) mean[t] += x[t] / n;
  }
  for (std::size_t t = 0; t < 6; ++t) EXPECT_NEAR(mean[t], ref[t], 0.01) << t;
}

TEST(PolytopeSampler, SameSeedSameChain) {
  auto a = PolytopeSampler(unit_box(4), {0.5, 0.5, 0.5, 0.5}, 77);
  auto b = PolytopeSampler(unit_box(4), {0.5, 0.5, 0.5, 0.5}, 77);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.step(), b.step());
}

TEST(SampleEvalMatrix, PointEntriesAreReturnedUnchanged) {
  Rng rng(1);
  const IntervalMatrix m = {{{3, 3}, {2, 5}}, {{7, 7}, {1.5, 1.5}}};
  for (int i = 0; i < 100; ++i) {
    const auto s = sample_eval_matrix(m, EvalSampling::kContinuous, rng);
    EXPECT_EQ(s[0][0], 3.0);
    EXPECT_EQ(s[1][0], 7.0);
    EXPECT_EQ(s[1][1], 1.5);
    EXPECT_GE(s[0][1], 2.0);
    EXPECT_LE(s[0][1], 5.0);
  }
}

TEST(SampleEvalMatrix, IntegerDrawsAreEquiprobable) {
  Rng rng(3);
  const IntervalMatrix m = {{{14, 16}}};
  std::map<double, int> counts;
  const int n = 90'000;
  for (int i = 0; i < n; ++i) ++counts[sample_eval_matrix(m, EvalSampling::kInteger, rng)[0][0]];
  ASSERT_EQ(counts.size(), 3u);
  for (const auto& [value, count] : counts) {
    EXPECT_TRUE(value == 14 || value == 15 || value == 16);
    EXPECT_NEAR(static_cast<double>(count) / n, 1.0 / 3.0, 0.01);
  }
}

TEST(SampleEvalMatrix, ContinuousDrawsAreUniform) {
  Rng rng(4);
  const IntervalMatrix m = {{{6, 9}}};
  std::vector<double> xs;
  for (int i = 0; i < 100'000; ++i) xs.push_back(sample_eval_matrix(m, EvalSampling::kContinuous, rng)[0][0]);
  EXPECT_LT(oracle::ks_uniform(xs, 6.0, 9.0), 0.01);
}

TEST(CheckIntervals, RejectsReversedAndIntegerFreeIntervals) {
  EXPECT_THROW(check_intervals({{{3, 2}}}, EvalSampling::kContinuous), std::invalid_argument);
  EXPECT_THROW(check_intervals({{{2.2, 2.8}}}, EvalSampling::kInteger), std::invalid_argument);
  EXPECT_NO_THROW(check_intervals({{{2.5, 2.5}}}, EvalSampling::kInteger));
}

TEST(CommonScale, WorkedAccelerationExample) {
  const std::vector<double> acceleration = {10.9, 13.5, 11, 14.2, 11.4, 11.3, 14.6, 12.9, 11.8, 13.9};
  const std::vector<double> draws = {0.81, 0.90, 0.12, 0.91, 0.63, 0.09, 0.27, 0.54, 0.95, 0.96};
  std::size_t next = 0;
  const auto col = sample_common_scale(acceleration, Direction::kMaximize, [&] { return draws[next++]; });
  EXPECT_EQ(col(10.9), 0.09);
  EXPECT_EQ(col(11), 0.12);
  EXPECT_EQ(col(11.3), 0.27);
  EXPECT_EQ(col(14.6), 0.96);
  next = 0;
  const auto reversed = sample_common_scale(acceleration, Direction::kMinimize, [&] { return draws[next++]; });
  EXPECT_EQ(reversed(10.9), 0.96);
  EXPECT_EQ(reversed(14.6), 0.09);
}

TEST(CommonScale, TiedLevelsShareAValueAndDuplicatesAreRedrawn) {
  const std::vector<double> raw = {3.8, 3.8, 4.0, 3.4};
  const std::vector<double> draws = {0.5, 0.5, 0.0, 0.2, 0.7};
  std::size_t next = 0;
  const auto col = sample_common_scale(raw, Direction::kMinimize, [&] { return draws[next++]; });
  EXPECT_EQ(col.levels.size(), 3u);
  EXPECT_EQ(col(3.4), 0.7);
  EXPECT_EQ(col(3.8), 0.5);
  EXPECT_EQ(col(4.0), 0.2);
  EXPECT_THROW(col(3.9), std::out_of_range);
}

TEST(CommonScale, PreservesWithinCriterionOrder) {
  Rng rng(10);
  std::mt19937_64 gen(10);
  std::uniform_int_distribution<int> level(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    PointMatrix raw(8, std::vector<double>(3));
    for (auto& row : raw) {
      for (auto& x : row) x = level(gen) * 1.5;
    }
    const std::vector<Direction> dirs = {Direction::kMaximize, Direction::kMinimize, Direction::kMaximize};
    const auto scaled = sample_common_scale(raw, dirs, rng).apply(raw);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t a = 0; a < raw.size(); ++a) {
        for (std::size_t b = 0; b < raw.size(); ++b) {
          const double ra = dirs[i] == Direction::kMaximize ? raw[a][i] : -raw[a][i];
          const double rb = dirs[i] == Direction::kMaximize ? raw[b][i] : -raw[b][i];
          EXPECT_EQ(ra < rb, scaled[a][i] < scaled[b][i]);
          EXPECT_EQ(ra == rb, scaled[a][i] == scaled[b][i]);
          EXPECT_GT(scaled[a][i], 0.0);
          EXPECT_LT(scaled[a][i], 1.0);
        }
      }
    }
  }
}
