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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "virtbench/error.hpp"
#include "virtbench/taxonomy.hpp"

namespace virtbench {

struct CategoryWeights {
  std::array<double, kCategoryCount> w{};

  double operator[](Category c) const { return w[index_of(c)]; }
  double& operator[](Category c) { return w[index_of(c)]; }

  static CategoryWeights defaults() {
    CategoryWeights cw;
    cw.w = {0.15, 0.20, 0.20, 0.10, 0.08, 0.07, 0.05, 0.07, 0.04, 0.04};
    return cw;
  }

  void validate() const {
    double sum = 0;
    for (double x : w) {
      if (!std::isfinite(x) || x < 0 || x > 1) throw WeightError("category weight outside [0,1]");
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw WeightError("category weights sum to " + std::to_string(sum) + ", not 1");
  }
};

inline double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

inline double metric_score(double actual, double expected, Direction direction) {
  if (direction == Direction::kBooleanTrue) {
    if (actual != 0 && actual != 1) throw PreconditionError("boolean metric value must be 0 or 1");
    return actual;
  }
  if (!(expected > 0)) throw CatalogError("expected value must be positive");
  if (direction == Direction::kLowerBetter) {
    if (!(actual > 0)) throw DegenerateInputError("lower-is-better score undefined for actual <= 0");
    return clamp01(expected / actual);
  }
  return clamp01(actual / expected);
}

// Positive means the measured system beats the baseline.
inline double mig_deviation(double actual, double expected, Direction direction) {
  if (direction == Direction::kBooleanTrue) return (actual - expected) * 100.0;
  if (!(expected > 0)) throw CatalogError("expected value must be positive");
  if (direction == Direction::kLowerBetter) return (expected - actual) / expected * 100.0;
  return (actual - expected) / expected * 100.0;
}

inline double category_score(std::span<const double> scores) {
  if (scores.empty()) throw PreconditionError("category has no scored metrics");
  double sum = 0;
  for (double s : scores) sum += s;
  return sum / static_cast<double>(scores.size());
}

inline double overall_score(const std::map<Category, double>& category_scores,
                            const CategoryWeights& weights) {
  weights.validate();
  double total = 0;
  for (auto c : kAllCategories) {
    auto it = category_scores.find(c);
    if (it == category_scores.end())
      throw PreconditionError("missing category score for " + std::string(info(c).display_name));
    total += weights[c] * it->second;
  }
  return total;
}

// Weighted mean over the categories that were actually run.
inline double partial_overall_score(const std::map<Category, double>& category_scores,
                                    const CategoryWeights& weights) {
  weights.validate();
  if (category_scores.empty()) throw PreconditionError("no category scores");
  double total = 0, wsum = 0;
  for (const auto& [c, s] : category_scores) {
    total += weights[c] * s;
    wsum += weights[c];
  }
  if (wsum == 0) throw WeightError("selected categories all have zero weight");
  return total / wsum;
}

enum class Grade { kAPlus, kA, kBPlus, kB, kC, kD, kF };

constexpr std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::kAPlus: return "A+";
    case Grade::kA: return "A";
    case Grade::kBPlus: return "B+";
    case Grade::kB: return "B";
    case Grade::kC: return "C";
    case Grade::kD: return "D";
    case Grade::kF: return "F";
  }
  return "";
}

inline Grade grade_of(double overall) {
  if (!(overall >= 0 && overall <= 1)) throw RangeError("overall score outside [0,1]");
  // Rounded to 1e-9 percent so 0.95 * 100 == 94.99999999999999 still lands on A+.
  double pct = std::round(overall * 100.0 * 1e9) / 1e9;
  if (pct >= 95) return Grade::kAPlus;
  if (pct >= 90) return Grade::kA;
  if (pct >= 85) return Grade::kBPlus;
  if (pct >= 80) return Grade::kB;
  if (pct >= 70) return Grade::kC;
  if (pct >= 60) return Grade::kD;
  return Grade::kF;
}

inline double graceful_degradation_score(bool no_crash, bool error_returned, bool recovered) {
  return 40.0 * no_crash + 30.0 * error_returned + 30.0 * recovered;
}

}  // namespace virtbench
