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
#include <utility>
#include <vector>

#include "virtbench/eval/context.hpp"
#include "virtbench/stats.hpp"

namespace virtbench::eval {

inline constexpr double kProbeKernelTokens = 1000;  // 1 ms of the whole GPU

// IS-001: how much the system actually lets a tenant allocate, versus the
// configured limit.
inline Measurement memory_limit_accuracy(EvalContext& ctx) {
  auto b = ctx.backend();
  auto limit = static_cast<double>(b.model().mem_limit_bytes);
  auto observed = static_cast<double>(fill_quota(b));
  if (observed == 0) return Measurement::scalar(0);
  return Measurement::scalar(std::min(observed, limit) / std::max(observed, limit) * 100.0);
}

// IS-002: time for an over-quota request to come back refused, with the
// quota already full and the other tenants active.
inline Measurement memory_limit_enforcement(EvalContext& ctx) {
  auto b = ctx.backend();
  b.set_tenants(ctx.tenants());
  fill_quota(b);
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    auto r = b.sim_alloc(kMiB);
    if (r.ok()) throw RunError("allocation past a full quota succeeded");
    xs.push_back(r.latency_us);
  }
  return Measurement::of_samples(std::move(xs));
}

struct UtilizationProbe {
  double target_percent;
  double achieved_percent;
  double accuracy_percent;
};

// Saturating stream of 1 ms kernels; utilization is what got admitted in the
// last `window_s` of a 2-window run, so the initial full bucket does not
// count. Native has no limiter and is held to 100%.
inline UtilizationProbe probe_sm_utilization(SimBackend& b, double target_percent,
                                             double window_s = 1.0) {
  const auto window_ns = static_cast<std::uint64_t>(window_s * 1e9);
  std::vector<std::pair<std::uint64_t, double>> admitted;
  while (b.clock().now_ns() < 2 * window_ns) {
    auto k = b.submit_kernel(kProbeKernelTokens);
    admitted.emplace_back(k.admitted_at_ns, kProbeKernelTokens);
    b.execute(kProbeKernelTokens);
  }
  const auto end = b.clock().now_ns();
  double tokens = 0;
  for (const auto& [at, work] : admitted)
    if (at > end - window_ns) tokens += work;
  double achieved = tokens * (1.0 + b.model().sm_util_bias) /
                    (window_s * sim::kTokensPerSecondAtFullGpu) * 100.0;
  double accuracy = std::max(0.0, 1.0 - std::abs(target_percent - achieved) / target_percent) * 100.0;
  return {target_percent, achieved, accuracy};
}

inline double utilization_target(const EvalContext& ctx) {
  if (ctx.mode() == SystemMode::kNative) return 100.0;
  return ctx.config().compute_limit_percent.value_or(50.0);
}

// IS-003
inline Measurement sm_utilization_accuracy(EvalContext& ctx) {
  double target = utilization_target(ctx);
  auto model = ctx.model(ctx.mode());
  if (ctx.mode() != SystemMode::kNative) model.sm_limit_percent = target;
  auto b = ctx.backend_with(model);
  auto probe = probe_sm_utilization(b, target);
  auto m = Measurement::scalar(probe.accuracy_percent);
  m.auxiliary["target_percent"] = probe.target_percent;
  m.auxiliary["achieved_percent"] = probe.achieved_percent;
  return m;
}

// IS-004: step the limit between 50% and 25% (or the configured limit and
// half of it) and time until the first kernel is admitted under the new one.
inline Measurement sm_limit_response(EvalContext& ctx) {
  double high = utilization_target(ctx);
  double low = high / 2;
  auto model = ctx.model(ctx.mode());
  if (ctx.mode() != SystemMode::kNative) model.sm_limit_percent = high;
  auto b = ctx.backend_with(model);
  std::vector<double> xs;
  double current = high;
  for (int i = 0; i < ctx.iterations(); ++i) {
    if (ctx.mode() == SystemMode::kNative) {
      xs.push_back(0);
      continue;
    }
    double next = current == high ? low : high;
    auto requested = b.clock().now_ns();
    b.request_sm_limit(next);
    while (true) {
      auto k = b.submit_kernel(kProbeKernelTokens);
      b.execute(kProbeKernelTokens);
      if (k.effective_limit_percent == next) {
        xs.push_back(static_cast<double>(k.admitted_at_ns - requested) / 1e6);
        break;
      }
    }
    current = next;
  }
  return Measurement::of_samples(std::move(xs));
}

struct OwnedBlock {
  sim::Block block;
  int tenant;
};

// True when no two live allocations overlap. Overlap between different
// tenants is a leak; within one tenant it is allocator corruption.
inline bool ranges_disjoint(std::vector<OwnedBlock> blocks) {
  std::sort(blocks.begin(), blocks.end(),
            [](const OwnedBlock& a, const OwnedBlock& b) { return a.block.offset < b.block.offset; });
  for (std::size_t i = 1; i < blocks.size(); ++i)
    if (blocks[i - 1].block.offset + blocks[i - 1].block.length > blocks[i].block.offset) return false;
  return true;
}

// IS-005
inline Measurement cross_tenant_memory_isolation(EvalContext& ctx) {
  auto b = ctx.backend();
  const int tenants = ctx.tenants();
  b.set_tenants(tenants);
  auto rng = ctx.workload_rng();
  std::vector<std::vector<sim::Handle>> live(static_cast<std::size_t>(tenants));
  for (int op = 0; op < 400; ++op) {
    auto t = static_cast<std::size_t>(op % tenants);
    if (!live[t].empty() && rng.uniform() < 0.4) {
      auto k = rng.uniform_int(0, live[t].size() - 1);
      b.sim_free(live[t][k]);
      live[t].erase(live[t].begin() + static_cast<std::ptrdiff_t>(k));
      continue;
    }
    auto r = b.sim_alloc(rng.uniform_int(1, 16) * kMiB, static_cast<int>(t));
    if (r.ok()) live[t].push_back(r.handle);
  }
  std::vector<OwnedBlock> blocks;
  bool owners_intact = true;
  for (int t = 0; t < tenants; ++t)
    for (auto h : live[static_cast<std::size_t>(t)]) {
      owners_intact = owners_intact && b.owner_of(h) == t;
      blocks.push_back({*b.heap().block_of(h), t});
    }
  return Measurement::boolean(owners_intact && ranges_disjoint(std::move(blocks)));
}

// IS-006: solo versus fully contended kernel time.
inline Measurement cross_tenant_compute_isolation(EvalContext& ctx) {
  auto b = ctx.backend();
  double solo = b.kernel_exec_us(kProbeKernelTokens, 0);
  double contended = b.kernel_exec_us(kProbeKernelTokens, ctx.tenants() - 1);
  return Measurement::scalar(std::clamp(solo / contended, 0.0, 1.0));
}

// Round-robin time slicing across tenants. The layer's scheduler favours
// tenants early in its scan order; tenant_skew is the share the last one
// loses. Returns useful work per second for each tenant.
inline std::vector<double> tenant_throughputs(SimBackend& b, int tenants, int rounds = 100,
                                              double quantum_us = 1000) {
  std::vector<double> work(static_cast<std::size_t>(tenants), 0.0);
  auto start = b.clock().now_ns();
  for (int r = 0; r < rounds; ++r)
    for (int i = 0; i < tenants; ++i) {
      double share = tenants > 1 ? 1.0 - b.model().tenant_skew * i / (tenants - 1) : 1.0;
      work[static_cast<std::size_t>(i)] += quantum_us * share;
      b.clock().advance_us(quantum_us);
    }
  double elapsed_s = static_cast<double>(b.clock().now_ns() - start) / 1e9;
  for (auto& w : work) w /= elapsed_s;
  return work;
}

// IS-007
inline Measurement qos_consistency(EvalContext& ctx) {
  auto b = ctx.backend();
  auto tp = tenant_throughputs(b, ctx.tenants());
  return Measurement::scalar(coefficient_of_variation(tp));
}

// IS-008
inline Measurement fairness_index(EvalContext& ctx) {
  auto b = ctx.backend();
  auto tp = tenant_throughputs(b, ctx.tenants());
  return Measurement::scalar(jains_index(tp));
}

// IS-009: one saturating neighbour.
inline Measurement noisy_neighbor(EvalContext& ctx) {
  auto b = ctx.backend();
  double solo = 1.0 / b.kernel_exec_us(kProbeKernelTokens, 0);
  double noisy = 1.0 / b.kernel_exec_us(kProbeKernelTokens, 1);
  return Measurement::scalar(degradation_percent(solo, noisy));
}

// IS-010: fault in tenant 0; tenant 1 must carry on untouched.
inline Measurement fault_isolation(EvalContext& ctx) {
  auto b = ctx.backend();
  b.set_tenants(2);
  auto a = b.sim_alloc(64 * kMiB, 0);
  auto other = b.sim_alloc(64 * kMiB, 1);
  if (!a.ok() || !other.ok()) throw RunError("fault-isolation setup allocations refused");
  auto report = b.inject_fault(sim::FaultKind::kKernelError);
  bool survived = false;
  try {
    b.submit_kernel(kProbeKernelTokens);
    b.execute(kProbeKernelTokens);
    auto fresh = b.sim_alloc(kMiB, 1);
    survived = fresh.ok() && b.owner_of(other.handle) == 1;
  } catch (const sim::DeviceLostError&) {
    survived = false;
  }
  return Measurement::boolean(report.no_crash && survived);
}

}  // namespace virtbench::eval
