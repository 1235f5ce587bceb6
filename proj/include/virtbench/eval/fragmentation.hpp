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

#include <vector>

#include "virtbench/eval/context.hpp"
#include "virtbench/sim/heap.hpp"

namespace virtbench::eval {

// Each round requests `churn_allocs` blocks of uniform size (refusals are
// skipped), then frees every second live block. Sizes come from the
// workload stream, so every mode sees the same requests.
inline std::vector<sim::Handle> run_churn(SimBackend& b, const WorkloadShape& w, sim::SplitMix64 rng) {
  std::vector<sim::Handle> live;
  const auto lo = w.churn_min_bytes / kMiB, hi = w.churn_max_bytes / kMiB;
  for (int round = 0; round < w.churn_rounds; ++round) {
    for (int i = 0; i < w.churn_allocs; ++i) {
      auto r = b.sim_alloc(rng.uniform_int(lo, hi) * kMiB);
      if (r.ok()) live.push_back(r.handle);
    }
    std::vector<sim::Handle> kept;
    for (std::size_t i = 0; i < live.size(); ++i) {
      if (i % 2 == 0) b.sim_free(live[i]);
      else kept.push_back(live[i]);
    }
    live = std::move(kept);
  }
  return live;
}

// Mean latency of allocate-then-free probes of the given sizes; refused
// probes are left out.
inline double probe_alloc_latency(SimBackend& b, const std::vector<std::uint64_t>& sizes) {
  double sum = 0;
  int n = 0;
  for (auto bytes : sizes) {
    auto r = b.sim_alloc(bytes);
    if (!r.ok()) continue;
    sum += r.latency_us;
    ++n;
    b.sim_free(r.handle);
  }
  if (n == 0) throw RunError("every allocation probe was refused");
  return sum / n;
}

// FRAG-001
inline Measurement fragmentation_level(EvalContext& ctx) {
  auto b = ctx.backend();
  run_churn(b, ctx.shape(), ctx.workload_rng());
  return Measurement::scalar(sim::fragmentation_index(b.heap()) * 100.0);
}

// FRAG-002: the same probe sizes on a fresh heap and after the churn.
inline Measurement alloc_latency_degradation(EvalContext& ctx) {
  auto b = ctx.backend();
  auto rng = ctx.workload_rng();
  std::vector<std::uint64_t> probes;
  const auto lo = ctx.shape().churn_min_bytes / kMiB, hi = ctx.shape().churn_max_bytes / kMiB;
  for (int i = 0; i < 32; ++i) probes.push_back(rng.uniform_int(lo, hi) * kMiB);
  double fresh = probe_alloc_latency(b, probes);
  run_churn(b, ctx.shape(), rng.split());
  return Measurement::scalar(probe_alloc_latency(b, probes) / fresh);
}

// FRAG-003: compaction after the churn. Blocks the layer cannot relocate
// (compaction_pinned_fraction of them) stay put.
inline Measurement compaction_efficiency(EvalContext& ctx) {
  auto b = ctx.backend();
  auto rng = ctx.workload_rng();
  run_churn(b, ctx.shape(), rng.split());
  const double pinned_fraction = b.model().compaction_pinned_fraction;
  std::unordered_map<sim::Handle, bool> pinned;
  for (auto h : b.heap().handles()) pinned[h] = rng.uniform() < pinned_fraction;
  double largest = static_cast<double>(b.heap().compact([&](sim::Handle h) { return pinned.at(h); }));
  double total = static_cast<double>(b.heap().total_free());
  if (total <= 0) throw RunError("no free memory left to reclaim");
  return Measurement::scalar(largest / total * 100.0);
}

}  // namespace virtbench::eval
