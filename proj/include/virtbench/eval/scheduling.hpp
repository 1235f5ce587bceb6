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
#include "virtbench/eval/llm.hpp"

namespace virtbench::eval {

// SCHED-001
inline Measurement context_switch(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(b.context_switch_us());
  return Measurement::of_samples(std::move(xs));
}

// SCHED-002: empty-kernel launch with the other tenants active.
inline Measurement contended_launch(EvalContext& ctx) {
  auto b = ctx.backend();
  b.set_tenants(ctx.tenants());
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(b.submit_kernel(0).launch_overhead_us);
  return Measurement::of_samples(std::move(xs));
}

// SCHED-003: two concurrent streams against one.
inline Measurement stream_concurrency(EvalContext& ctx) {
  auto b = ctx.backend();
  double one = 0, two = 0;
  for (int i = 0; i < ctx.iterations(); ++i) {
    one += batch_time_us(b, ctx.shape(), 1);
    two += batch_time_us(b, ctx.shape(), 2);
  }
  return Measurement::scalar(one / two * 100.0);
}

// SCHED-004
inline Measurement preemption_latency(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    double ms = b.jitter(b.model().preempt_ms);
    b.clock().advance_us(ms * 1e3);
    xs.push_back(ms);
  }
  return Measurement::of_samples(std::move(xs));
}

}  // namespace virtbench::eval
