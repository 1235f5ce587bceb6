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
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "virtbench/error.hpp"

namespace virtbench {

struct Statistics {
  double mean = 0;
  double stddev = 0;
  double median = 0;
  double p95 = 0;
  double p99 = 0;
  std::optional<double> cv;  // nullopt when the mean is not positive
  std::size_t n = 0;
};

namespace detail {

inline void require_samples(std::span<const double> xs) {
  if (xs.empty()) throw PreconditionError("empty sample set");
  for (double x : xs)
    if (!std::isfinite(x)) throw PreconditionError("non-finite sample");
}

// Nearest rank on an already sorted range.
inline double nearest_rank(std::span<const double> sorted, double p) {
  auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

inline double sample_stddev(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0;
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace detail

inline double mean_of(std::span<const double> xs) {
  detail::require_samples(xs);
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double percentile(std::span<const double> xs, double p) {
  detail::require_samples(xs);
  if (!(p > 0 && p <= 100)) throw RangeError("percentile outside (0,100]");
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  return detail::nearest_rank(sorted, p);
}

inline double sample_variance(std::span<const double> xs) {
  double sd = detail::sample_stddev(xs, mean_of(xs));
  return sd * sd;
}

inline double coefficient_of_variation(std::span<const double> xs) {
  double mean = mean_of(xs);
  if (mean <= 0) throw UndefinedCvError("coefficient of variation undefined for mean <= 0");
  return detail::sample_stddev(xs, mean) / mean;
}

inline Statistics compute_stats(std::span<const double> xs) {
  detail::require_samples(xs);
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  Statistics s;
  s.n = sorted.size();
  // Summing in sorted order keeps the result independent of sample order.
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(s.n);
  s.stddev = detail::sample_stddev(sorted, s.mean);
  s.median = detail::nearest_rank(sorted, 50);
  s.p95 = detail::nearest_rank(sorted, 95);
  s.p99 = detail::nearest_rank(sorted, 99);
  if (s.mean > 0) s.cv = s.stddev / s.mean;
  return s;
}

inline double jains_index(std::span<const double> xs) {
  if (xs.empty()) throw PreconditionError("fairness over zero tenants");
  double sum = 0, sum_sq = 0;
  bool all_equal = true;
  for (double x : xs) {
    if (!std::isfinite(x) || x < 0) throw PreconditionError("throughputs must be finite and >= 0");
    sum += x;
    sum_sq += x * x;
    all_equal = all_equal && x == xs.front();
  }
  if (sum == 0) throw DegenerateInputError("fairness index undefined when every throughput is zero");
  if (all_equal) return 1.0;  // exact, not subject to rounding
  double j = sum * sum / (static_cast<double>(xs.size()) * sum_sq);
  return std::clamp(j, 1.0 / static_cast<double>(xs.size()), 1.0);
}

inline double scaling_efficiency(double throughput_at_n, double throughput_at_1, int n) {
  if (!(throughput_at_1 > 0)) throw PreconditionError("scaling baseline must be positive");
  if (n < 1) throw PreconditionError("scaling factor must be >= 1");
  return throughput_at_n / (n * throughput_at_1);
}

inline double degradation_percent(double baseline, double observed) {
  if (!(baseline > 0)) throw PreconditionError("degradation baseline must be positive");
  return (baseline - observed) / baseline * 100.0;
}

}  // namespace virtbench
