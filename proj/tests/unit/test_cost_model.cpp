#include "qnet/cost_model.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace qnet;

TEST(CostVector, RejectsNegativeAndNonFinite) {
  EXPECT_THROW(CostVector(-0.1, 0.0), std::domain_error);
  EXPECT_THROW(CostVector(0.0, -1e-12), std::domain_error);
  EXPECT_THROW(CostVector(std::numeric_limits<double>::infinity(), 0.0),
               std::domain_error);
  EXPECT_THROW(CostVector(0.0, std::nan("")), std::domain_error);
  EXPECT_NO_THROW(CostVector(0.0, 0.0));
}

TEST(CostVector, AddsComponentWise) {
  const CostVector sum = CostVector(0.1, 0.2) + CostVector(0.3, 0.4);
  EXPECT_DOUBLE_EQ(sum.loss_db(), 0.4);
  EXPECT_DOUBLE_EQ(sum.z_db(), 0.6000000000000001);
  const CostVector scaled = 2.5 * CostVector(0.1, 0.2);
  EXPECT_DOUBLE_EQ(scaled.loss_db(), 0.25);
  EXPECT_DOUBLE_EQ(scaled.z_db(), 0.5);
}

TEST(CostModel, ZeroCostIsPerfectChannel) {
  const auto m = metrics_from_cost({});
  EXPECT_EQ(m.efficiency, 1.0);
  EXPECT_EQ(m.fidelity, 1.0);
  const auto c = cost_from_metrics({1.0, 1.0});
  EXPECT_EQ(c.loss_db(), 0.0);
  EXPECT_EQ(c.z_db(), 0.0);
  EXPECT_FALSE(std::signbit(c.loss_db()));
}

TEST(CostModel, ThreeDbHalvesPower) {
  EXPECT_NEAR(linear_from_db(10.0 * std::log10(2.0)), 0.5, 1e-15);
  EXPECT_NEAR(db_from_linear(0.1), 10.0, 1e-12);
  // 0.2 dB of dephasing: coherence 10^-0.02, F = (1 + 10^-0.02) / 2.
  const auto m = metrics_from_cost({0.2, 0.2});
  EXPECT_NEAR(m.fidelity, (1.0 + std::pow(10.0, -0.02)) / 2.0, 1e-15);
  EXPECT_NEAR(m.efficiency, std::pow(10.0, -0.02), 1e-15);
}

TEST(CostModel, DomainErrors) {
  EXPECT_THROW((void)db_from_linear(0.0), std::domain_error);
  EXPECT_THROW((void)db_from_linear(1.5), std::domain_error);
  EXPECT_THROW((void)linear_from_db(-1.0), std::domain_error);
  EXPECT_THROW((void)cost_from_metrics({0.5, 0.5}), std::domain_error);
  EXPECT_THROW((void)cost_from_metrics({0.0, 0.9}), std::domain_error);
}

TEST(CostModel, ScalarizationModes) {
  const CostVector c(0.3, 0.7);
  EXPECT_DOUBLE_EQ(scalarize(c, Scalarization::Sum), 1.0);
  EXPECT_DOUBLE_EQ(scalarize(c, Scalarization::LossOnly), 0.3);
  EXPECT_DOUBLE_EQ(scalarize(c, Scalarization::DephasingOnly), 0.7);
}

TEST(CostModelProperty, RoundTripAndMultiplicativity) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> db(0.0, 30.0);
  for (int i = 0; i < 2000; ++i) {
    const CostVector a(db(rng), db(rng));
    const CostVector b(db(rng), db(rng));
    const auto back = cost_from_metrics(metrics_from_cost(a));
    EXPECT_NEAR(back.loss_db(), a.loss_db(), 1e-9);
    EXPECT_NEAR(back.z_db(), a.z_db(), 1e-9);

    const auto ma = metrics_from_cost(a);
    const auto mb = metrics_from_cost(b);
    const auto mab = metrics_from_cost(a + b);
    EXPECT_NEAR(mab.efficiency, ma.efficiency * mb.efficiency, 1e-9);
    // Coherence factors 2F - 1 multiply.
    EXPECT_NEAR(2 * mab.fidelity - 1,
                (2 * ma.fidelity - 1) * (2 * mb.fidelity - 1), 1e-9);
  }
}

TEST(CostModelProperty, AccumulateMatchesFold) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> db(0.0, 2.0);
  std::vector<CostVector> costs;
  CostVector folded;
  for (int i = 0; i < 50; ++i) {
    costs.emplace_back(db(rng), db(rng));
    folded += costs.back();
  }
  EXPECT_EQ(accumulate(costs), folded);
  EXPECT_EQ(accumulate({}), CostVector{});
}
