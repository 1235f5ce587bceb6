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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "virtbench/stats.hpp"
#include "virtbench/taxonomy.hpp"

namespace virtbench {

enum class ResultKind { kSamples, kScalar, kBoolean };

constexpr std::string_view to_string(ResultKind k) {
  switch (k) {
    case ResultKind::kSamples: return "samples";
    case ResultKind::kScalar: return "scalar";
    case ResultKind::kBoolean: return "boolean";
  }
  return "";
}

// What an evaluator hands back: raw samples (warmup included), one value,
// or a pass/fail outcome.
struct Measurement {
  ResultKind kind = ResultKind::kScalar;
  std::vector<double> samples;
  double value = 0;
  bool outcome = false;
  std::map<std::string, double> auxiliary;

  static Measurement of_samples(std::vector<double> xs) {
    Measurement m;
    m.kind = ResultKind::kSamples;
    m.samples = std::move(xs);
    return m;
  }
  static Measurement scalar(double v) {
    Measurement m;
    m.kind = ResultKind::kScalar;
    m.value = v;
    return m;
  }
  static Measurement boolean(bool pass) {
    Measurement m;
    m.kind = ResultKind::kBoolean;
    m.outcome = pass;
    m.value = pass ? 1.0 : 0.0;
    return m;
  }
};

struct MetricResult {
  MetricId id{Category::kOverhead, 1};
  ResultKind kind = ResultKind::kScalar;
  std::optional<Statistics> statistics;  // kSamples only
  double value = 0;                      // mean, scalar, or 0/1
  std::optional<bool> outcome;           // kBoolean only
  std::map<std::string, double> auxiliary;

  double score = 0;
  double mig_expected = 0;
  double mig_deviation_percent = 0;
  double mig_gap_percent = 0;
};

}  // namespace virtbench
