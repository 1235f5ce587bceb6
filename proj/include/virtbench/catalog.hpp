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

#include <array>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "virtbench/calibration.hpp"
#include "virtbench/error.hpp"
#include "virtbench/scoring.hpp"
#include "virtbench/taxonomy.hpp"

namespace virtbench {

struct MetricDef {
  MetricId id;
  Category category;
  std::string name;
  std::string description;
  Unit unit;
  Direction direction;
  double mig_expected;  // 1.0 (pass) for boolean metrics
};

class Catalog {
 public:
  explicit Catalog(Calibration calibration) : calibration_(std::move(calibration)) {
    defs_.reserve(kMetricCount);
    for (const auto& row : kTaxonomy) {
      auto id = MetricId::require(row.id);
      auto it = calibration_.mig_expected.find(id);
      double expected = it != calibration_.mig_expected.end() ? it->second
                        : row.direction == Direction::kBooleanTrue
                            ? 1.0
                            : throw CatalogError("no MIG baseline for " + id.str());
      if (!std::isfinite(expected)) throw CatalogError("non-finite MIG baseline for " + id.str());
      if (row.direction == Direction::kBooleanTrue ? (expected != 0 && expected != 1) : expected <= 0)
        throw CatalogError("invalid MIG baseline for " + id.str());
      defs_.push_back(MetricDef{id, id.category(), std::string(row.name),
                                std::string(row.description), row.unit, row.direction, expected});
    }

    weights_ = CategoryWeights::defaults();
    for (const auto& [category, w] : calibration_.weights) weights_[category] = w;
    weights_.validate();
  }

  const std::vector<MetricDef>& metrics() const { return defs_; }
  std::size_t size() const { return defs_.size(); }

  const MetricDef& lookup(MetricId id) const { return defs_[id.flat_index()]; }
  const MetricDef& lookup(std::string_view id) const { return lookup(MetricId::require(id)); }

  const CategoryWeights& weights() const { return weights_; }
  const Calibration& calibration() const { return calibration_; }

 private:
  Calibration calibration_;
  std::vector<MetricDef> defs_;
  CategoryWeights weights_;
};

// Shipped defaults, overridden key-by-key by `baseline_file` when given.
inline Catalog load_catalog(const std::optional<std::filesystem::path>& baseline_file = std::nullopt) {
  return Catalog(resolve_calibration(baseline_file));
}

}  // namespace virtbench
