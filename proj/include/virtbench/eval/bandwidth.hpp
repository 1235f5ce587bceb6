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
#include <vector>

#include "virtbench/eval/context.hpp"
#include "virtbench/stats.hpp"

namespace virtbench::eval {

inline constexpr int kMaxStreams = 32;

// BW-001: each tenant's share of the bus relative to running alone.
inline Measurement bandwidth_isolation(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    double solo = b.measured_rate(b.effective_bandwidth(1));
    double shared = b.measured_rate(b.effective_bandwidth(ctx.tenants()));
    xs.push_back(shared / solo * 100.0);
  }
  return Measurement::of_samples(std::move(xs));
}

// BW-002: the bus is granted in the same scan order as SM time.
inline Measurement bandwidth_fairness(EvalContext& ctx) {
  auto b = ctx.backend();
  const int n = ctx.tenants();
  std::vector<double> per_tenant;
  for (int i = 0; i < n; ++i)
    per_tenant.push_back(b.effective_bandwidth(n) * (1.0 - b.model().tenant_skew * i / (n - 1)));
  return Measurement::scalar(jains_index(per_tenant));
}

// Smallest stream count whose aggregate bandwidth reaches 95% of the best
// aggregate seen up to `max_streams`.
inline int saturation_point(const SimBackend& b, int max_streams = kMaxStreams) {
  double best = 0;
  for (int n = 1; n <= max_streams; ++n) best = std::max(best, b.aggregate_bandwidth(n));
  for (int n = 1; n <= max_streams; ++n)
    if (b.aggregate_bandwidth(n) >= 0.95 * best) return n;
  return max_streams;
}

// BW-003
inline Measurement bus_saturation(EvalContext& ctx) {
  return Measurement::scalar(saturation_point(ctx.backend()));
}

// BW-004: loss with one competing stream.
inline Measurement bandwidth_interference(EvalContext& ctx) {
  auto b = ctx.backend();
  return Measurement::scalar(degradation_percent(b.effective_bandwidth(1), b.effective_bandwidth(2)));
}

}  // namespace virtbench::eval
