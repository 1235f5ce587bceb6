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
#include "virtbench/stats.hpp"

namespace virtbench::eval {

// OH-001: CPU-side cost of launching an empty kernel.
inline Measurement launch_latency(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(b.submit_kernel(0).launch_overhead_us);
  return Measurement::of_samples(std::move(xs));
}

// OH-002
inline Measurement alloc_latency(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    auto r = b.sim_alloc(kMiB);
    if (!r.ok()) throw RunError("1 MB allocation refused on an empty device");
    xs.push_back(r.latency_us);
    b.sim_free(r.handle);
  }
  return Measurement::of_samples(std::move(xs));
}

// OH-003
inline Measurement free_latency(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    auto r = b.sim_alloc(kMiB);
    if (!r.ok()) throw RunError("1 MB allocation refused on an empty device");
    xs.push_back(b.sim_free(r.handle));
  }
  return Measurement::of_samples(std::move(xs));
}

// OH-004
inline Measurement context_creation(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(b.create_context());
  return Measurement::of_samples(std::move(xs));
}

// OH-005: same call sequence against the system and bare metal; the
// difference is what the interception layer adds.
inline Measurement interception_overhead(EvalContext& ctx) {
  auto b = ctx.backend();
  auto ref = ctx.native_reference();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i)
    xs.push_back(b.passthrough_call_ns() - ref.passthrough_call_ns());
  return Measurement::of_samples(std::move(xs));
}

// OH-006
inline Measurement lock_contention(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(b.sample_lock_wait(ctx.tenants()));
  return Measurement::of_samples(std::move(xs));
}

// OH-007
inline Measurement tracking_overhead(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    auto r = b.sim_alloc(kMiB);
    if (!r.ok()) throw RunError("1 MB allocation refused on an empty device");
    xs.push_back(r.tracking_ns);
    b.sim_free(r.handle);
  }
  return Measurement::of_samples(std::move(xs));
}

// OH-008
inline Measurement rate_limiter_overhead(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(b.submit_kernel(0).rate_check_ns);
  return Measurement::of_samples(std::move(xs));
}

// OH-009: share of one CPU spent polling the management library.
inline Measurement polling_overhead(EvalContext& ctx) {
  const auto& m = ctx.backend().model();
  return Measurement::scalar(m.poll_cost_us / (m.poll_interval_ms * 1000.0) * 100.0);
}

// OH-010: throughput of a fixed kernel stream, relative to bare metal.
inline Measurement throughput_degradation(EvalContext& ctx) {
  auto b = ctx.backend();
  auto ref = ctx.native_reference();
  const auto& w = ctx.shape();
  auto run = [&](SimBackend& dev) {
    auto start = dev.clock().now_ns();
    for (int k = 0; k < w.workload_kernels; ++k) {
      dev.submit_kernel(w.workload_kernel_us);
      dev.execute(w.workload_kernel_us);
    }
    return w.workload_kernels / (static_cast<double>(dev.clock().now_ns() - start) / 1e9);
  };
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    double native = run(ref);
    xs.push_back(degradation_percent(native, run(b)));
  }
  return Measurement::of_samples(std::move(xs));
}

}  // namespace virtbench::eval
