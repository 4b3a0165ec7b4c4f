#include "qnet/qkd.hpp"

#include "qnet/cost_model.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qnet;

TEST(BinaryEntropy, Values) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_NEAR(binary_entropy(0.11), 0.49982, 1e-4);
  EXPECT_THROW((void)binary_entropy(-0.01), std::domain_error);
  EXPECT_THROW((void)binary_entropy(1.01), std::domain_error);
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    ASSERT_NEAR(binary_entropy(x), binary_entropy(1.0 - x), 1e-15);
  }
}

TEST(RawRate, Values) {
  EXPECT_DOUBLE_EQ(raw_rate(1, 0.0, 1.0, 1), 1.0);
  EXPECT_DOUBLE_EQ(raw_rate(10, 0.5, 0.4, 2), 1.0);
  EXPECT_EQ(raw_rate(10, 1.0, 0.4, 2), 0.0);
  EXPECT_THROW((void)raw_rate(1, 1.5, 0.4, 1), std::domain_error);
  EXPECT_THROW((void)raw_rate(1, 0.0, 0.4, 0), std::domain_error);
}

TEST(SecretKeyRate, Values) {
  EXPECT_DOUBLE_EQ(secret_key_rate(0.0, 1.0, 1, 1.0), 1.0);
  EXPECT_NEAR(secret_key_rate(0.0, 1.0, 1, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(secret_key_rate(0.0, 0.8, 2, 0.95), 0.28544, 1e-4);
  EXPECT_THROW((void)secret_key_rate(0.0, 1.0, 1, 0.4), std::domain_error);
}

TEST(SecretKeyRate, BoundedByPerPairRawRate) {
  for (int i = 0; i <= 50; ++i) {
    const double f = 0.5 + i / 100.0;
    const double c = secret_key_rate(0.1, 0.6, 3, f);
    const double r = raw_rate(7, 0.1, 0.6, 3) / 7.0;
    ASSERT_LE(c, r + 1e-15);
    if (f == 1.0) {
      ASSERT_DOUBLE_EQ(c, r);
    } else {
      ASSERT_LT(c, r);
    }
  }
}

TEST(SecretKeyRate, Monotone) {
  double prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double c = secret_key_rate(0.0, i / 100.0, 1, 0.9);
    ASSERT_GE(c, prev);
    prev = c;
  }
  prev = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double c = secret_key_rate(0.0, 0.7, 1, 0.5 + i / 200.0);
    ASSERT_GE(c, prev);
    prev = c;
  }
  prev = 2.0;
  for (int i = 0; i <= 100; ++i) {
    const double c = secret_key_rate(i / 100.0, 0.7, 1, 0.9);
    ASSERT_LE(c, prev);
    prev = c;
  }
  EXPECT_GT(secret_key_rate(0.0, 0.7, 1, 0.9), secret_key_rate(0.0, 0.7, 2, 0.9));
}

TEST(CellRates, UnroutedCellIsZero) {
  const auto r = cell_rates(5, 1.0, std::nan(""), std::nan(""), 3);
  EXPECT_EQ(r.raw, 0.0);
  EXPECT_EQ(r.key, 0.0);
  const auto p = cell_rates(1, 0.0, 1.0, 1.0, 1);
  EXPECT_EQ(p.raw, 1.0);
  EXPECT_EQ(p.key, 1.0);
}

TEST(Contours, CornerValuesAndMonotonicity) {
  const auto grid = key_rate_contours({0.0, 3.0103}, {0.5, 1.0}, 100);
  ASSERT_EQ(grid.eff_db.size(), 100u);
  ASSERT_EQ(grid.fidelity.size(), 100u);
  EXPECT_DOUBLE_EQ(grid.at(0, 99), 1.0);
  EXPECT_NEAR(grid.at(0, 0), 0.0, 1e-15);
  const auto cell = key_rate_contours({3.0103, 3.0103}, {0.95, 0.95}, 2);
  EXPECT_NEAR(cell.at(0, 0), 0.35680, 1e-4);
  for (std::size_t r = 0; r < 100; ++r) {
    for (std::size_t c = 0; c < 100; ++c) {
      if (r > 0) {
        ASSERT_LE(grid.at(r, c), grid.at(r - 1, c));
      }
      if (c > 0) {
        ASSERT_GE(grid.at(r, c), grid.at(r, c - 1));
      }
    }
  }
  EXPECT_THROW((void)key_rate_contours({0, 50}, {0.5, 1}, 10), std::invalid_argument);
  EXPECT_THROW((void)key_rate_contours({0, 5}, {0.4, 1}, 10), std::invalid_argument);
  EXPECT_THROW((void)key_rate_contours({0, 5}, {0.5, 1}, 1), std::invalid_argument);
}
