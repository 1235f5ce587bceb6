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

#include <atomic>
#include <chrono>
#include <ctime>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "virtbench/catalog.hpp"
#include "virtbench/config.hpp"
#include "virtbench/eval/registry.hpp"
#include "virtbench/result.hpp"
#include "virtbench/scoring.hpp"
#include "virtbench/stats.hpp"

namespace virtbench {

inline constexpr const char* kBenchmarkVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct CategoryScore {
  Category category;
  double score;
};

struct BenchmarkReport {
  std::string benchmark_version = kBenchmarkVersion;
  int schema_version = kSchemaVersion;
  sim::SystemMode system = sim::SystemMode::kNative;

  // config echo
  int iterations = 0;
  int warmup = 0;
  int tenants = 0;
  std::optional<double> memory_limit_mb;
  std::optional<double> compute_limit_percent;
  std::uint64_t seed = 0;
  std::optional<std::vector<MetricId>> metric_filter;

  std::string generated_at;
  std::vector<MetricResult> metrics;
  std::vector<CategoryScore> categories;
  double weighted_score = 0;     // 0..1
  double unweighted_parity = 0;  // mean metric score, 0..1
  std::optional<double> mig_parity;  // weighted, percent; absent for native
  Grade grade = Grade::kF;

  const MetricResult* find(MetricId id) const {
    for (const auto& m : metrics)
      if (m.id == id) return &m;
    return nullptr;
  }
};

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now()) {
  std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Turns raw evaluator output into a scored result. Warmup samples are the
// leading ones and are dropped.
inline MetricResult finalize_metric(const MetricDef& def, Measurement m, int warmup) {
  MetricResult r;
  r.id = def.id;
  r.kind = m.kind;
  r.auxiliary = std::move(m.auxiliary);
  r.mig_expected = def.mig_expected;
  switch (m.kind) {
    case ResultKind::kSamples: {
      auto skip = static_cast<std::size_t>(warmup);
      if (m.samples.size() <= skip)
        throw RunError(def.id.str() + " produced no samples after warmup");
      std::span<const double> kept(m.samples.data() + skip, m.samples.size() - skip);
      r.statistics = compute_stats(kept);
      r.value = r.statistics->mean;
      break;
    }
    case ResultKind::kScalar:
      r.value = m.value;
      break;
    case ResultKind::kBoolean:
      r.outcome = m.outcome;
      r.value = m.outcome ? 1.0 : 0.0;
      break;
  }
  if (!std::isfinite(r.value)) throw RunError(def.id.str() + " produced a non-finite value");

  // Lower-is-better values at or below zero (no overhead at all, or a pool
  // that beats the driver) are at the limit of the scale.
  if (def.direction == Direction::kLowerBetter && r.value <= 0)
    r.score = 1.0;
  else
    r.score = metric_score(r.value, def.mig_expected, def.direction);
  r.mig_deviation_percent = mig_deviation(r.value, def.mig_expected, def.direction);
  r.mig_gap_percent = std::abs(r.mig_deviation_percent);
  return r;
}

// Category scores, overall score, parity and grade from the metric rows.
inline void aggregate(BenchmarkReport& report, const CategoryWeights& weights) {
  std::map<Category, std::vector<double>> by_category;
  double sum = 0;
  for (const auto& m : report.metrics) {
    by_category[m.id.category()].push_back(m.score);
    sum += m.score;
  }
  std::map<Category, double> cat_scores;
  report.categories.clear();
  for (const auto& [c, scores] : by_category) {
    double s = category_score(scores);
    cat_scores[c] = s;
    report.categories.push_back({c, s});
  }
  report.weighted_score = cat_scores.size() == kCategoryCount ? overall_score(cat_scores, weights)
                                                              : partial_overall_score(cat_scores, weights);
  report.weighted_score = clamp01(report.weighted_score);
  report.unweighted_parity = sum / static_cast<double>(report.metrics.size());
  if (report.system == sim::SystemMode::kNative)
    report.mig_parity.reset();
  else
    report.mig_parity = report.weighted_score * 100.0;
  report.grade = grade_of(report.weighted_score);
}

inline MetricResult evaluate_metric(const RunConfig& config, const Catalog& catalog, MetricId id) {
  eval::EvalContext ctx(config, catalog.calibration(), id);
  Measurement m;
  try {
    m = eval::evaluator_for(id)(ctx);
  } catch (const RunError&) {
    throw;
  } catch (const Error& e) {
    throw RunError(id.str() + ": " + e.what());
  }
  return finalize_metric(catalog.lookup(id), std::move(m), config.warmup);
}

inline BenchmarkReport run_benchmark(const RunConfig& config, const Catalog& catalog) {
  config.validate();
  try {
    sim::SimBackend probe(eval::EvalContext(config, catalog.calibration(), MetricId(Category::kOverhead, 1))
                              .model(config.system));
  } catch (const Error& e) {
    throw RunError(std::string("backend initialization failed: ") + e.what());
  }

  std::vector<MetricId> ids;
  if (config.metric_filter) {
    ids = *config.metric_filter;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  } else {
    for (const auto& def : catalog.metrics()) ids.push_back(def.id);
  }

  std::vector<std::optional<MetricResult>> results(ids.size());
  if (config.jobs <= 1 || ids.size() < 2) {
    for (std::size_t i = 0; i < ids.size(); ++i) results[i] = evaluate_metric(config, catalog, ids[i]);
  } else {
    // Each metric owns its backend, so workers share nothing but the index.
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      for (std::size_t i; (i = next++) < ids.size();) {
        try {
          results[i] = evaluate_metric(config, catalog, ids[i]);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    auto n = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), ids.size());
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  BenchmarkReport report;
  report.system = config.system;
  report.iterations = config.iterations;
  report.warmup = config.warmup;
  report.tenants = config.tenants;
  report.memory_limit_mb = config.memory_limit_mb;
  report.compute_limit_percent = config.compute_limit_percent;
  report.seed = config.seed;
  if (config.metric_filter) report.metric_filter = ids;
  report.generated_at = utc_timestamp();
  for (auto& r : results) report.metrics.push_back(std::move(*r));
  aggregate(report, catalog.weights());
  return report;
}

}  // namespace virtbench
