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

namespace virtbench::eval {

// NCCL-001
inline Measurement allreduce_latency(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    double us = b.jitter(b.model().nccl_allreduce_us);
    if (b.virtualized()) us += b.jitter(b.model().hook_ns) / 1e3;
    b.clock().advance_us(us);
    xs.push_back(us);
  }
  return Measurement::of_samples(std::move(xs));
}

inline Measurement sampled_rate(EvalContext& ctx, double sim::BackendModel::*rate) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(b.measured_rate(b.model().*rate));
  return Measurement::of_samples(std::move(xs));
}

// NCCL-002..004
inline Measurement allgather_bandwidth(EvalContext& ctx) {
  return sampled_rate(ctx, &sim::BackendModel::nccl_gather_gbps);
}
inline Measurement p2p_bandwidth(EvalContext& ctx) {
  return sampled_rate(ctx, &sim::BackendModel::p2p_gbps);
}
inline Measurement broadcast_bandwidth(EvalContext& ctx) {
  return sampled_rate(ctx, &sim::BackendModel::bcast_gbps);
}

}  // namespace virtbench::eval
