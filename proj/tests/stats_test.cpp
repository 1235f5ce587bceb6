// Copyright 2026 The virtbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "virtbench/sim/rng.hpp"
#include "virtbench/stats.hpp"

namespace virtbench {
namespace {

std::vector<double> iota_samples(int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = i + 1;
  return xs;
}

TEST(Stats, ConstantSamples) {
  auto s = compute_stats(std::vector<double>{5, 5, 5, 5});
  EXPECT_EQ(s.mean, 5);
  EXPECT_EQ(s.stddev, 0);
  ASSERT_TRUE(s.cv.has_value());
  EXPECT_EQ(*s.cv, 0);
}

TEST(Stats, MedianOfOddLength) {
  EXPECT_EQ(compute_stats(std::vector<double>{1, 2, 3, 4, 5}).median, 3);
}

TEST(Stats, PercentilesOfOneToHundred) {
  auto xs = iota_samples(100);
  auto s = compute_stats(xs);
  EXPECT_EQ(s.p99, 99);
  EXPECT_EQ(s.p95, 95);
  EXPECT_EQ(percentile(xs, 50), 50);
}

TEST(Stats, PercentileEdges) {
  EXPECT_EQ(percentile(std::vector<double>{10}, 99), 10);
  EXPECT_EQ(percentile(std::vector<double>{3, 1, 2}, 100), 3);
  std::vector<double> xs{1, 2};
  EXPECT_THROW(percentile(xs, 0), RangeError);
  EXPECT_THROW(percentile(xs, 100.5), RangeError);
  EXPECT_THROW(percentile(std::vector<double>{}, 50), PreconditionError);
}

TEST(Stats, CoefficientOfVariation) {
  EXPECT_EQ(coefficient_of_variation(std::vector<double>{10, 10, 10}), 0);
  EXPECT_NEAR(coefficient_of_variation(std::vector<double>{8, 12}), std::sqrt(8.0) / 10, 1e-12);
  EXPECT_THROW(coefficient_of_variation(std::vector<double>{0, 0}), UndefinedCvError);
}

TEST(Stats, UndefinedCvLeavesOtherFieldsIntact) {
  auto s = compute_stats(std::vector<double>{-1, 1});
  EXPECT_FALSE(s.cv.has_value());
  EXPECT_EQ(s.mean, 0);
  EXPECT_EQ(s.n, 2u);
}

TEST(Stats, SingleSampleHasZeroSpread) {
  auto s = compute_stats(std::vector<double>{4.2});
  EXPECT_EQ(s.stddev, 0);
  EXPECT_EQ(s.median, 4.2);
  EXPECT_EQ(s.p99, 4.2);
}

TEST(Stats, EmptySampleSetIsRejected) {
  EXPECT_THROW(compute_stats(std::vector<double>{}), PreconditionError);
}

TEST(StatsOracle, ThousandRandomSampleSets) {
  sim::SplitMix64 rng(2026);
  for (int trial = 0; trial < 1000; ++trial) {
    auto n = static_cast<int>(rng.uniform_int(1, 300));
    std::vector<double> xs(n);
    bool ties = trial % 3 == 0;
    for (auto& x : xs) x = ties ? static_cast<double>(rng.uniform_int(0, 9)) : rng.uniform(-50, 500);

    auto s = compute_stats(xs);
    ASSERT_EQ(s.n, static_cast<std::size_t>(n));
    ASSERT_EQ(s.median, oracle::nearest_rank(xs, 50)) << "trial " << trial;
    ASSERT_EQ(s.p95, oracle::nearest_rank(xs, 95)) << "trial " << trial;
    ASSERT_EQ(s.p99, oracle::nearest_rank(xs, 99)) << "trial " << trial;
    double p = rng.uniform(0.01, 100);
    ASSERT_EQ(percentile(xs, p), oracle::nearest_rank(xs, p)) << "trial " << trial << " p=" << p;
    ASSERT_NEAR(s.stddev, oracle::sample_stddev(xs), 1e-9 * std::max(1.0, oracle::sample_stddev(xs)));
    ASSERT_LE(s.median, s.p95);
    ASSERT_LE(s.p95, s.p99);
  }
}

TEST(Jain, KnownValues) {
  EXPECT_EQ(jains_index(std::vector<double>{7, 7, 7, 7}), 1.0);
  EXPECT_DOUBLE_EQ(jains_index(std::vector<double>{1, 0, 0, 0}), 0.25);
  EXPECT_THROW(jains_index(std::vector<double>{0, 0}), DegenerateInputError);
  EXPECT_THROW(jains_index(std::vector<double>{}), PreconditionError);
}

TEST(Jain, RandomizedProperties) {
  sim::SplitMix64 rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    auto n = static_cast<std::size_t>(rng.uniform_int(1, 64));
    std::vector<double> xs(n);
    for (auto& x : xs) x = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0, 1000);
    if (std::all_of(xs.begin(), xs.end(), [](double x) { return x == 0; })) xs[0] = 1;

    double j = jains_index(xs);
    ASSERT_GE(j, 1.0 / static_cast<double>(n));
    ASSERT_LE(j, 1.0);

    double k = rng.uniform(1e-3, 1e3);
    std::vector<double> scaled(xs);
    for (auto& x : scaled) x *= k;
    ASSERT_NEAR(jains_index(scaled), j, 1e-12);

    bool all_equal = std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs[0]; });
    ASSERT_EQ(j == 1.0, all_equal) << "trial " << trial;

    std::vector<double> same(n, xs[0] + 1);
    ASSERT_EQ(jains_index(same), 1.0);
  }
}

TEST(Scaling, Efficiency) {
  EXPECT_EQ(scaling_efficiency(100, 100, 1), 1.0);
  EXPECT_EQ(scaling_efficiency(400, 100, 4), 1.0);
  EXPECT_DOUBLE_EQ(scaling_efficiency(312, 100, 4), 0.78);
  EXPECT_THROW(scaling_efficiency(1, 0, 4), PreconditionError);
}

TEST(Scaling, Degradation) {
  EXPECT_EQ(degradation_percent(100, 100), 0);
  EXPECT_NEAR(degradation_percent(100, 81.5), 18.5, 1e-12);
  EXPECT_NEAR(degradation_percent(100, 90.8), 9.2, 1e-12);
  EXPECT_THROW(degradation_percent(0, 1), PreconditionError);
}

}  // namespace
}  // namespace virtbench
