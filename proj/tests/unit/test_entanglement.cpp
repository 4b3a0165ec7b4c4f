#include "qnet/entanglement.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qnet;

TEST(Purification, KnownValue) {
  const auto out = purify_two({1.0, 0.9}, {1.0, 0.9});
  // 0.81 / (0.81 + 0.01)
  EXPECT_NEAR(out.fidelity, 0.987805, 1e-6);
  EXPECT_NEAR(out.efficiency, 0.82, 1e-12);
  EXPECT_NEAR(purification_success(0.9, 0.9), 0.82, 1e-12);
}

TEST(Purification, FixedPoints) {
  EXPECT_EQ(purify_two({1.0, 1.0}, {1.0, 1.0}).fidelity, 1.0);
  EXPECT_EQ(purified_fidelity(1.0, 1.0), 1.0);
  // The map fixes the separable bound, but such pairs are never purified.
  EXPECT_EQ(purified_fidelity(0.5, 0.5), 0.5);
  EXPECT_NEAR(purified_fidelity(0.5 + 1e-9, 0.5 + 1e-9), 0.5, 1e-8);
  EXPECT_THROW((void)purify_two({1.0, 0.5}, {1.0, 0.9}), std::domain_error);
  EXPECT_THROW((void)purified_fidelity(1.0, 0.0), std::domain_error);
  EXPECT_THROW((void)purified_fidelity(1.1, 0.5), std::domain_error);
}

TEST(Purification, EfficiencyIncludesSuccessProbability) {
  const auto out = purify_two({0.5, 0.8}, {0.4, 0.7});
  const double ps = 0.8 * 0.7 + 0.2 * 0.3;
  EXPECT_NEAR(out.efficiency, 0.5 * 0.4 * ps, 1e-15);
  EXPECT_NEAR(out.fidelity, 0.56 / ps, 1e-15);
}

TEST(Purification, FoldOrderAndFiltering) {
  // Descending fidelity, left fold.
  const std::vector<PathMetrics> in = {{0.9, 0.7}, {0.8, 0.95}, {0.7, 0.4}, {0.6, 0.85}};
  const auto expected = purify_two(purify_two({0.8, 0.95}, {0.6, 0.85}), {0.9, 0.7});
  const auto got = purify_metrics(in);
  EXPECT_DOUBLE_EQ(got.fidelity, expected.fidelity);
  EXPECT_DOUBLE_EQ(got.efficiency, expected.efficiency);

  const std::vector<PathMetrics> single = {{0.3, 0.9}, {0.9, 0.5}};
  EXPECT_EQ(purify_metrics(single), (PathMetrics{0.3, 0.9}));
  const std::vector<PathMetrics> none = {{0.9, 0.5}};
  EXPECT_THROW((void)purify_metrics(none), std::domain_error);
  EXPECT_THROW((void)purify_metrics({}), std::domain_error);
}

TEST(PurificationProperty, ImprovesOnEqualInputs) {
  for (int i = 1; i < 1000; ++i) {
    const double f = 0.5 + 0.5 * i / 1000.0;
    const auto out = purify_two({1.0, f}, {1.0, f});
    ASSERT_GT(out.fidelity, f) << f;
    ASSERT_LE(out.fidelity, 1.0);
  }
}

TEST(Purification, RoutesExamples) {
  Route one;
  one.total_cost = CostVector(0.2, 0.2);
  EXPECT_EQ(purify_routes(std::vector<Route>{one}), metrics_from_cost(one.total_cost));

  // Two routes with F = 0.9 and eta = 0.8 each.
  Route r;
  r.total_cost = cost_from_metrics({0.8, 0.9});
  const std::vector<Route> two = {r, r};
  const auto m2 = purify_routes(two);
  EXPECT_NEAR(m2.fidelity, 0.987805, 1e-6);
  EXPECT_NEAR(m2.efficiency, 0.5248, 1e-4);
  const std::vector<Route> three = {r, r, r};
  EXPECT_GT(purify_routes(three).fidelity, m2.fidelity);
}

TEST(PurificationProperty, EqualInputsFoldOrderInvariant) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> fid(0.51, 1.0);
  for (int i = 0; i < 200; ++i) {
    const PathMetrics m{0.7, fid(rng)};
    const auto left = purify_two(purify_two(m, m), m);
    const auto right = purify_two(m, purify_two(m, m));
    ASSERT_NEAR(left.fidelity, right.fidelity, 1e-12);
    ASSERT_NEAR(left.efficiency, right.efficiency, 1e-12);
  }
}

TEST(PurificationProperty, SymmetricAndBounded) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> fid(0.5000001, 1.0);
  std::uniform_real_distribution<double> eff(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const PathMetrics a{eff(rng), fid(rng)};
    const PathMetrics b{eff(rng), fid(rng)};
    const auto ab = purify_two(a, b);
    const auto ba = purify_two(b, a);
    ASSERT_DOUBLE_EQ(ab.fidelity, ba.fidelity);
    ASSERT_DOUBLE_EQ(ab.efficiency, ba.efficiency);
    ASSERT_LE(ab.efficiency, std::min(a.efficiency, b.efficiency));
    // Both inputs above 1/2 always beat the better one.
    ASSERT_GE(ab.fidelity, std::max(a.fidelity, b.fidelity) - 1e-15);
  }
}
