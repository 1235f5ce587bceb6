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

#include <filesystem>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "virtbench/report.hpp"

namespace virtbench {

enum class DeltaStatus { kUnchanged, kImproved, kRegressed, kNew, kRemoved };

constexpr std::string_view to_string(DeltaStatus s) {
  switch (s) {
    case DeltaStatus::kUnchanged: return "unchanged";
    case DeltaStatus::kImproved: return "improved";
    case DeltaStatus::kRegressed: return "regression";
    case DeltaStatus::kNew: return "new";
    case DeltaStatus::kRemoved: return "removed";
  }
  return "";
}

struct MetricDelta {
  MetricId id;
  DeltaStatus status;
  std::optional<double> value_delta;  // current - baseline, metric units
  std::optional<double> score_delta;  // points (0..100 scale)
};

struct ComparisonReport {
  std::string baseline_system;
  std::string current_system;
  double threshold_points = 5.0;
  double overall_delta_points = 0;
  std::vector<MetricDelta> deltas;

  int regressions() const {
    int n = 0;
    for (const auto& d : deltas) n += d.status == DeltaStatus::kRegressed;
    return n;
  }
};

// A metric regresses when its score drops by more than `threshold_points`.
inline ComparisonReport compare_reports(const BenchmarkReport& current, const BenchmarkReport& baseline,
                                        double threshold_points = 5.0) {
  if (current.schema_version != baseline.schema_version)
    throw CompareError("schema version mismatch: " + std::to_string(current.schema_version) + " vs " +
                       std::to_string(baseline.schema_version));
  ComparisonReport out;
  out.baseline_system = sim::to_string(baseline.system);
  out.current_system = sim::to_string(current.system);
  out.threshold_points = threshold_points;
  out.overall_delta_points = (current.weighted_score - baseline.weighted_score) * 100.0;
  for (const auto& m : current.metrics) {
    const auto* base = baseline.find(m.id);
    if (!base) {
      out.deltas.push_back({m.id, DeltaStatus::kNew, std::nullopt, std::nullopt});
      continue;
    }
    double points = (m.score - base->score) * 100.0;
    auto status = points < -threshold_points ? DeltaStatus::kRegressed
                  : points > threshold_points ? DeltaStatus::kImproved
                                              : DeltaStatus::kUnchanged;
    out.deltas.push_back({m.id, status, m.value - base->value, points});
  }
  for (const auto& b : baseline.metrics)
    if (!current.find(b.id)) out.deltas.push_back({b.id, DeltaStatus::kRemoved, std::nullopt, std::nullopt});
  return out;
}

inline ComparisonReport compare_reports(const BenchmarkReport& current,
                                        const std::filesystem::path& baseline_path,
                                        double threshold_points = 5.0) {
  if (!std::filesystem::exists(baseline_path))
    throw CompareError("baseline report not found: " + baseline_path.string());
  return compare_reports(current, load_report(baseline_path), threshold_points);
}

inline std::string emit_comparison_json(const ComparisonReport& c) {
  ojson j;
  j["baseline_system"] = c.baseline_system;
  j["current_system"] = c.current_system;
  j["threshold_points"] = c.threshold_points;
  j["overall_delta_points"] = c.overall_delta_points;
  j["regressions"] = c.regressions();
  ojson rows = ojson::array();
  for (const auto& d : c.deltas)
    rows.push_back({{"id", d.id.str()},
                    {"status", std::string(to_string(d.status))},
                    {"value_delta", detail::opt_number(d.value_delta)},
                    {"score_delta_points", detail::opt_number(d.score_delta)}});
  j["metrics"] = rows;
  return j.dump(2) + "\n";
}

inline std::string emit_comparison_txt(const ComparisonReport& c) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1);
  os << "Comparison: " << c.current_system << " against baseline " << c.baseline_system << "\n";
  os << "Overall change: " << std::showpos << c.overall_delta_points << std::noshowpos << " points\n";
  os << "Regressions (score drop > " << c.threshold_points << " points): " << c.regressions() << "\n";
  for (const auto& d : c.deltas) {
    if (d.status == DeltaStatus::kUnchanged) continue;
    os << "  " << std::left << std::setw(10) << d.id.str() << std::setw(11) << to_string(d.status);
    if (d.score_delta) os << std::right << std::showpos << *d.score_delta << std::noshowpos << " pts";
    os << "\n";
  }
  return os.str();
}

}  // namespace virtbench
