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

#include <map>
#include <vector>

#include "virtbench/scoring.hpp"
#include "virtbench/sim/rng.hpp"

namespace virtbench {
namespace {

constexpr auto kLo = Direction::kLowerBetter;
constexpr auto kHi = Direction::kHigherBetter;
constexpr auto kBool = Direction::kBooleanTrue;

std::map<Category, double> uniform_categories(double s) {
  std::map<Category, double> out;
  for (auto c : kAllCategories) out[c] = s;
  return out;
}

TEST(MetricScore, LowerBetter) {
  EXPECT_EQ(metric_score(5.0, 5.0, kLo), 1.0);
  EXPECT_EQ(metric_score(10.0, 5.0, kLo), 0.5);
  EXPECT_NEAR(metric_score(15.3, 5.0, kLo), 0.3268, 5e-5);
  EXPECT_EQ(metric_score(2.0, 5.0, kLo), 1.0);  // better than baseline clamps
  EXPECT_THROW(metric_score(0.0, 5.0, kLo), DegenerateInputError);
}

TEST(MetricScore, HigherBetterAndBoolean) {
  EXPECT_EQ(metric_score(50, 100, kHi), 0.5);
  EXPECT_EQ(metric_score(150, 100, kHi), 1.0);
  EXPECT_EQ(metric_score(-3, 100, kHi), 0.0);
  EXPECT_EQ(metric_score(1, 1, kBool), 1.0);
  EXPECT_EQ(metric_score(0, 1, kBool), 0.0);
  EXPECT_THROW(metric_score(0.5, 1, kBool), PreconditionError);
  EXPECT_THROW(metric_score(1, 0, kHi), CatalogError);
}

TEST(MetricScore, Monotone) {
  sim::SplitMix64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    double e = rng.uniform(0.1, 100), a = rng.uniform(0.01, 300), b = a + rng.uniform(0, 50);
    ASSERT_GE(metric_score(a, e, kLo), metric_score(b, e, kLo));
    ASSERT_LE(metric_score(a, e, kHi), metric_score(b, e, kHi));
  }
}

TEST(MigDeviation, SignConvention) {
  EXPECT_EQ(mig_deviation(5.0, 5.0, kLo), 0);
  EXPECT_NEAR(mig_deviation(15.3, 5.0, kLo), -206.0, 1e-9);
  EXPECT_NEAR(mig_deviation(110, 100, kHi), 10.0, 1e-9);
}

TEST(MigDeviation, PositiveExactlyWhenScoreWouldExceedOne) {
  sim::SplitMix64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    double e = rng.uniform(0.1, 100), a = rng.uniform(0.01, 300);
    for (auto d : {kLo, kHi}) {
      double unclamped = d == kLo ? e / a : a / e;
      ASSERT_EQ(mig_deviation(a, e, d) > 0, unclamped > 1) << a << " vs " << e;
    }
  }
}

TEST(CategoryScore, Mean) {
  EXPECT_EQ(category_score(std::vector<double>{1.0, 1.0}), 1.0);
  EXPECT_NEAR(category_score(std::vector<double>{0.2, 0.4, 0.6}), 0.4, 1e-12);
  EXPECT_THROW(category_score(std::vector<double>{}), PreconditionError);
}

TEST(Weights, DefaultTable) {
  auto w = CategoryWeights::defaults();
  EXPECT_EQ(w[Category::kOverhead], 0.15);
  EXPECT_EQ(w[Category::kIsolation], 0.20);
  EXPECT_EQ(w[Category::kLlm], 0.20);
  EXPECT_EQ(w[Category::kBandwidth], 0.10);
  EXPECT_EQ(w[Category::kCache], 0.08);
  EXPECT_EQ(w[Category::kPcie], 0.07);
  EXPECT_EQ(w[Category::kNccl], 0.05);
  EXPECT_EQ(w[Category::kScheduling], 0.07);
  EXPECT_EQ(w[Category::kFragmentation], 0.04);
  EXPECT_EQ(w[Category::kErrorRecovery], 0.04);
  EXPECT_NO_THROW(w.validate());
  w[Category::kCache] = 0.09;
  EXPECT_THROW(w.validate(), WeightError);
}

TEST(OverallScore, Aggregation) {
  auto w = CategoryWeights::defaults();
  EXPECT_NEAR(overall_score(uniform_categories(1.0), w), 1.0, 1e-12);
  EXPECT_NEAR(overall_score(uniform_categories(0.5), w), 0.5, 1e-12);

  CategoryWeights flat;
  for (auto c : kAllCategories) flat[c] = 0.1;
  std::map<Category, double> cats;
  double sum = 0;
  int i = 0;
  for (auto c : kAllCategories) sum += cats[c] = 0.05 * ++i;
  EXPECT_NEAR(overall_score(cats, flat), sum / 10, 1e-12);

  cats.erase(Category::kCache);
  EXPECT_THROW(overall_score(cats, w), PreconditionError);
}

TEST(OverallScore, PartialRunsReweightPresentCategories) {
  auto w = CategoryWeights::defaults();
  std::map<Category, double> cats{{Category::kOverhead, 0.4}, {Category::kIsolation, 0.9}};
  EXPECT_NEAR(partial_overall_score(cats, w), (0.15 * 0.4 + 0.2 * 0.9) / 0.35, 1e-12);
}

TEST(Grade, PublishedScores) {
  EXPECT_EQ(grade_of(0.852), Grade::kBPlus);
  EXPECT_EQ(grade_of(0.720), Grade::kC);
  EXPECT_EQ(to_string(grade_of(0.852)), "B+");
}

TEST(Grade, Boundaries) {
  EXPECT_EQ(grade_of(0.95), Grade::kAPlus);
  EXPECT_EQ(grade_of(0.90), Grade::kA);
  EXPECT_EQ(grade_of(0.85), Grade::kBPlus);
  EXPECT_EQ(grade_of(0.80), Grade::kB);
  EXPECT_EQ(grade_of(0.70), Grade::kC);
  EXPECT_EQ(grade_of(0.60), Grade::kD);
  EXPECT_EQ(grade_of(0.5999), Grade::kF);
  EXPECT_EQ(grade_of(0.9499), Grade::kA);
  EXPECT_EQ(grade_of(1.0), Grade::kAPlus);
  EXPECT_EQ(grade_of(0.0), Grade::kF);
  EXPECT_THROW(grade_of(1.01), RangeError);
  EXPECT_THROW(grade_of(-0.1), RangeError);
}

TEST(Graceful, Weights) {
  EXPECT_EQ(graceful_degradation_score(true, true, true), 100);
  EXPECT_EQ(graceful_degradation_score(false, false, false), 0);
  EXPECT_EQ(graceful_degradation_score(true, false, true), 70);
  EXPECT_EQ(graceful_degradation_score(false, true, false), 30);
}

}  // namespace
}  // namespace virtbench
