#include <gtest/gtest.h>

#include <bit>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "smaa_choquet/capacity.hpp"

using namespace smaa_choquet;

namespace {

MobiusCapacity from(std::size_t n, const std::vector<double>& c) {
  return MobiusCapacity::from_coordinates(n, c);
}

MobiusCapacity published_barycenter() { return from(4, fixtures::didactic_barycenter()); }

}  // namespace

TEST(MuFromMobius, EmptySetIsZeroAndFullSetIsOne) {
  std::mt19937_64 gen(11);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto m = from(n, oracle::random_capacity(n, gen));
    EXPECT_EQ(mu_from_mobius(m, 0), 0.0);
    EXPECT_NEAR(mu_from_mobius(m, full_set(n)), 1.0, 1e-12);
  }
}

TEST(MuFromMobius, PublishedBarycenterOnFirstPair) {
  EXPECT_NEAR(mu_from_mobius(published_barycenter(), 0b0011), 0.478, 1e-12);
}

TEST(MuFromMobius, RejectsSubsetOutsideCriteria) {
  EXPECT_THROW(mu_from_mobius(published_barycenter(), 0b10000), std::out_of_range);
}

TEST(MobiusFromCapacity, AdditiveCapacityHasNoHigherTerms) {
  const std::vector<double> w = {0.1, 0.2, 0.3, 0.4};
  std::vector<double> values(16, 0.0);
  for (CriterionSet s = 0; s < 16; ++s) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (s >> i & 1u) values[s] += w[i];
    }
  }
  const auto m = mobius_from_capacity(CapacityView(4, values));
  for (CriterionSet s = 1; s < 16; ++s) {
    if (std::popcount(s) == 1) {
      EXPECT_NEAR(m[s], w[static_cast<std::size_t>(std::countr_zero(s))], 1e-12);
    } else {
      EXPECT_NEAR(m[s], 0.0, 1e-12);
    }
  }
}

TEST(MobiusFromCapacity, PairOnlyCapacity) {
  const auto m = mobius_from_capacity(CapacityView(2, {0.0, 0.0, 0.0, 1.0}));
  EXPECT_EQ(m[1], 0.0);
  EXPECT_EQ(m[2], 0.0);
  EXPECT_EQ(m[3], 1.0);
}

TEST(MobiusFromCapacity, RoundTripOnRandomMonotoneCapacities) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      // Random monotone set function: max over random chains keeps monotonicity.
      const std::size_t size = std::size_t{1} << n;
      std::vector<double> raw(size);
      for (auto& x : raw) x = u(gen);
      std::vector<double> v(size, 0.0);
      for (std::size_t s = 1; s < size; ++s) {
        v[s] = raw[s];
        for (std::size_t i = 0; i < n; ++i) {
          if (s >> i & 1u) v[s] = std::max(v[s], v[s & ~(std::size_t{1} << i)]);
        }
      }
      const double top = v[size - 1];
      for (auto& x : v) x /= top;
      v[0] = 0.0;
      const auto m = mobius_from_capacity(CapacityView(n, v));
      for (std::size_t s = 0; s < size; ++s) {
        EXPECT_NEAR(mu_from_general_mobius(m, static_cast<CriterionSet>(s)), v[s], 1e-12);
      }
    }
  }
}

TEST(MobiusFromCapacity, RoundTripThroughTwoAdditiveCapacity) {
  std::mt19937_64 gen(9);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto m = from(n, oracle::random_capacity(n, gen));
    const auto view = to_capacity_view(m);
    const auto general = mobius_from_capacity(view);
    for (CriterionSet s = 0; s < full_set(n) + 1; ++s) {
      EXPECT_NEAR(view(s), oracle::mu(n, m.coordinates(), s), 1e-12);
      EXPECT_NEAR(mu_from_general_mobius(general, s), view(s), 1e-12);
    }
  }
}

TEST(Validate, UniformAdditiveIsValid) {
  for (std::size_t n = 2; n <= 8; ++n) EXPECT_TRUE(validate(MobiusCapacity::uniform_additive(n)).empty());
}

TEST(Validate, NegativeSingleIsReported) {
  const auto m = from(3, {-0.1, 0.5, 0.6, 0.0, 0.0, 0.0});
  const auto report = validate(m);
  ASSERT_FALSE(report.empty());
  EXPECT_TRUE(std::any_of(report.begin(), report.end(), [](const CapacityViolation& v) {
    return v.kind == ViolationKind::kNonnegativity && v.criterion == 0;
  }));
}

TEST(Validate, MonotonicityViolationNamesCriterionAndSubset) {
  // m1 = 0.3, m12 = -0.4: the (i = 1, T = {2}) condition fails by 0.1.
  const auto m = from(3, {0.3, 0.5, 0.6, -0.4, 0.0, 0.0});
  bool found = false;
  for (const auto& v : validate_exhaustive(m)) {
    if (v.kind == ViolationKind::kMonotonicity && v.criterion == 0 && v.subset == 0b010) {
      found = true;
      EXPECT_NEAR(v.margin, -0.1, 1e-12);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_FALSE(validate(m).empty());
  EXPECT_FALSE(oracle::monotone_exhaustive(3, m.coordinates()));
}

TEST(Validate, AdditivityOneForbidsPairs) {
  const auto report = validate(MobiusCapacity(2, {0.5, 0.4}, {0.1}, 1));
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, ViolationKind::kAdditivity);
}

TEST(Validate, ShortcutAgreesWithExhaustiveEnumeration) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t n = 2; n <= 8; ++n) {
    int accepted = 0;
    for (int trial = 0; trial < 400; ++trial) {
      std::vector<double> c(MobiusCapacity::dimension(n));
      for (std::size_t i = 0; i < n; ++i) c[i] = u(gen);
      for (std::size_t p = n; p < c.size(); ++p) c[p] = (2.0 * u(gen) - 1.0) * 1.5 / static_cast<double>(n);
      const double total = std::accumulate(c.begin(), c.end(), 0.0);
      if (total <= 0.0) continue;
      for (auto& x : c) x /= total;
      const auto m = from(n, c);
      const bool shortcut = validate(m).empty();
      EXPECT_EQ(shortcut, validate_exhaustive(m).empty());
      EXPECT_EQ(shortcut, oracle::monotone_exhaustive(n, c));
      accepted += shortcut;
    }
    EXPECT_GT(accepted, 0);
    EXPECT_LT(accepted, 400);
  }
}

TEST(ChoquetCapacity, ConstantVectorGivesItsValue) {
  std::mt19937_64 gen(2);
  const auto view = to_capacity_view(from(4, oracle::random_capacity(4, gen)));
  const std::vector<double> x = {3.5, 3.5, 3.5, 3.5};
  EXPECT_NEAR(choquet_capacity(x, view), 3.5, 1e-12);
}

TEST(ChoquetCapacity, EqualWeightsGiveTheMean) {
  const auto view = to_capacity_view(MobiusCapacity::uniform_additive(4));
  const std::vector<double> x = {1.0, 7.0, 2.0, 6.0};
  EXPECT_NEAR(choquet_capacity(x, view), 4.0, 1e-12);
}

TEST(ChoquetCapacity, RejectsNegativeEvaluations) {
  const auto view = to_capacity_view(MobiusCapacity::uniform_additive(2));
  const std::vector<double> x = {-1.0, 2.0};
  EXPECT_THROW(choquet_capacity(x, view), std::domain_error);
}

TEST(ChoquetMobius, PublishedBarycenterOnTwoAlternatives) {
  const auto m = published_barycenter();
  const auto& a = fixtures::didactic_matrix();
  EXPECT_NEAR(choquet_mobius(a[10], m), 11.278, 1e-9);
  EXPECT_NEAR(choquet_mobius(a[16], m), 11.165, 1e-9);
}

TEST(ChoquetMobius, AdditiveCapacityIsAWeightedSum) {
  const MobiusCapacity m(3, {0.2, 0.3, 0.5}, {0.0, 0.0, 0.0}, 1);
  const std::vector<double> x = {4.0, 1.0, 2.0};
  EXPECT_NEAR(choquet_mobius(x, m), 0.8 + 0.3 + 1.0, 1e-12);
}

TEST(ChoquetMobius, RejectsDimensionMismatch) {
  const std::vector<double> x = {1.0, 2.0};
  EXPECT_THROW(choquet_mobius(x, MobiusCapacity::uniform_additive(3)), std::invalid_argument);
}

TEST(ChoquetProperties, SortedAndMobiusFormsAgree) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    const auto c = oracle::random_capacity(n, gen);
    std::vector<double> x(n);
    for (auto& v : x) v = u(gen);
    const auto m = from(n, c);
    const double mobius = choquet_mobius(x, m);
    EXPECT_LT(std::fabs(choquet_capacity(x, to_capacity_view(m)) - mobius), 1e-10);
    EXPECT_LT(std::fabs(oracle::choquet_sorted(n, c, x) - mobius), 1e-10);
  }
}

TEST(ChoquetProperties, MonotoneAndBoundedByMinAndMax) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
    const auto m = from(n, oracle::random_capacity(n, gen));
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = u(gen);
      x[i] = y[i] + u(gen) * 0.3;
    }
    const double cx = choquet_mobius(x, m);
    EXPECT_GE(cx, choquet_mobius(y, m) - 1e-12);
    EXPECT_GE(cx, *std::min_element(x.begin(), x.end()) - 1e-12);
    EXPECT_LE(cx, *std::max_element(x.begin(), x.end()) + 1e-12);
  }
}

TEST(Shapley, AdditiveCapacityReturnsSingles) {
  const MobiusCapacity m(3, {0.2, 0.3, 0.5}, {0.0, 0.0, 0.0}, 1);
  EXPECT_DOUBLE_EQ(shapley(m, 1), 0.3);
}

TEST(Shapley, PublishedBarycenterFirstCriterion) {
  EXPECT_NEAR(shapley(published_barycenter(), 0), 0.3125, 1e-12);
}

TEST(Shapley, SumsToOne) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
    const auto m = from(n, oracle::random_capacity(n, gen));
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += shapley(m, i);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Shapley, RejectsOutOfRangeCriterion) {
  EXPECT_THROW(shapley(published_barycenter(), 4), std::out_of_range);
}

TEST(Interaction, PublishedBarycenterSecondAndFourth) {
  EXPECT_DOUBLE_EQ(interaction(published_barycenter(), 1, 3), -0.06);
}

TEST(Interaction, SymmetricAndZeroWhenAdditive) {
  const auto m = published_barycenter();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      EXPECT_EQ(interaction(m, i, j), interaction(m, j, i));
      EXPECT_EQ(interaction(MobiusCapacity::uniform_additive(4), i, j), 0.0);
    }
  }
}

TEST(Interaction, RejectsSameCriterion) {
  EXPECT_THROW(interaction(published_barycenter(), 2, 2), std::invalid_argument);
}
