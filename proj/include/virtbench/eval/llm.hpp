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

#include <cmath>
#include <vector>

#include "virtbench/eval/context.hpp"
#include "virtbench/stats.hpp"

namespace virtbench::eval {

inline constexpr double kLargeAllocTimeoutMs = 1000;  // LLM-007 when the request fails
inline constexpr double kPoolOpUs = 0.6;              // sub-allocation from a warm pool
inline constexpr std::uint64_t kLargeTensorBytes = 2 * kGiB;

// Single-head attention proxy: 2*B*S^2*D floating point operations.
inline double attention_flops(const WorkloadShape& w) {
  return 2.0 * w.batch * static_cast<double>(w.seq_len) * w.seq_len * w.head_dim;
}

inline double attention_native_us(const SimBackend& b, const WorkloadShape& w) {
  return attention_flops(w) / (b.model().peak_tflops * 1e12) * 1e6;
}

// One launch plus execution of the attention kernel; returns elapsed us.
inline double run_attention(SimBackend& b, const WorkloadShape& w, double speedup = 1.0) {
  auto start = b.clock().now_ns();
  double native_us = attention_native_us(b, w) / speedup;
  b.submit_kernel(native_us);
  b.execute(native_us);
  return static_cast<double>(b.clock().now_ns() - start) / 1e3;
}

// LLM-001
inline Measurement attention_throughput(EvalContext& ctx) {
  auto b = ctx.backend();
  const auto& w = ctx.shape();
  auto qkv = static_cast<std::uint64_t>(w.batch) * w.seq_len * w.head_dim * sizeof(float);
  for (int m = 0; m < 3; ++m)
    if (!b.sim_alloc(qkv).ok()) throw RunError("cannot allocate attention operands");
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i)
    xs.push_back(attention_flops(w) / (run_attention(b, w) * 1e-6) / 1e12);
  return Measurement::of_samples(std::move(xs));
}

// LLM-002: one KV-cache block per generated token.
inline Measurement kv_cache_alloc_rate(EvalContext& ctx) {
  auto b = ctx.backend();
  const auto& w = ctx.shape();
  std::vector<double> xs;
  std::vector<sim::Handle> kv;
  for (int i = 0; i < ctx.iterations(); ++i) {
    auto start = b.clock().now_ns();
    for (int t = 0; t < w.gen_length; ++t) {
      auto r = b.sim_alloc(w.kv_step_bytes);
      if (!r.ok()) throw RunError("KV cache growth refused");
      kv.push_back(r.handle);
      b.submit_kernel(w.kv_step_exec_us);
      b.execute(w.kv_step_exec_us);
    }
    xs.push_back(w.gen_length / (static_cast<double>(b.clock().now_ns() - start) / 1e9));
    for (auto h : kv) b.sim_free(h);
    kv.clear();
  }
  return Measurement::of_samples(std::move(xs));
}

// Time for one batch on a shared memory bus: a launch, then a kernel whose
// duration grows with the batch through bus contention.
inline double batch_time_us(SimBackend& b, const WorkloadShape& w, int batch) {
  auto start = b.clock().now_ns();
  double native_us = w.batch_kernel_us * (1.0 + b.model().contention_alpha * (batch - 1));
  b.submit_kernel(native_us);
  b.execute(native_us);
  return static_cast<double>(b.clock().now_ns() - start) / 1e3;
}

// LLM-003
inline Measurement batch_scaling(EvalContext& ctx) {
  auto b = ctx.backend();
  const auto& w = ctx.shape();
  double t1 = 0, tn = 0;
  for (int i = 0; i < ctx.iterations(); ++i) {
    t1 += batch_time_us(b, w, 1);
    tn += batch_time_us(b, w, w.scale_batch);
  }
  return Measurement::scalar(scaling_efficiency(w.scale_batch / tn, 1.0 / t1, w.scale_batch));
}

// One forward pass: `launches` kernels sharing `exec_us` of work, after
// `allocs` activation allocations.
inline void forward_pass(SimBackend& b, const WorkloadShape& w, int allocs, double exec_us,
                         std::vector<sim::Handle>& held) {
  for (int a = 0; a < allocs; ++a) {
    auto r = b.sim_alloc(w.activation_bytes);
    if (!r.ok()) throw RunError("activation allocation refused");
    held.push_back(r.handle);
  }
  double per_kernel = exec_us / w.launches_per_pass;
  for (int k = 0; k < w.launches_per_pass; ++k) {
    b.submit_kernel(per_kernel);
    b.execute(per_kernel);
  }
}

// LLM-004: time to first token per iteration; mean inter-token latency is
// reported alongside.
inline Measurement token_latency(EvalContext& ctx) {
  auto b = ctx.backend();
  const auto& w = ctx.shape();
  std::vector<double> ttft;
  double itl_sum = 0;
  long itl_n = 0;
  std::vector<sim::Handle> held;
  for (int i = 0; i < ctx.iterations(); ++i) {
    auto start = b.clock().now_ns();
    forward_pass(b, w, w.prefill_allocs, w.prefill_exec_us, held);
    ttft.push_back(static_cast<double>(b.clock().now_ns() - start) / 1e6);
    for (int t = 1; t < w.gen_length; ++t) {
      auto step = b.clock().now_ns();
      forward_pass(b, w, 1, w.decode_exec_us, held);
      if (i >= ctx.config().warmup) {
        itl_sum += static_cast<double>(b.clock().now_ns() - step) / 1e6;
        ++itl_n;
      }
    }
    for (auto h : held) b.sim_free(h);
    held.clear();
  }
  auto m = Measurement::of_samples(std::move(ttft));
  if (itl_n > 0) m.auxiliary["itl_ms"] = itl_sum / static_cast<double>(itl_n);
  return m;
}

// LLM-005: sub-allocating from a warm pool versus a driver round trip per
// tensor. Negative means the pool is cheaper.
inline Measurement memory_pool_efficiency(EvalContext& ctx) {
  auto b = ctx.backend();
  double direct = 0, pool = 0;
  for (int i = 0; i < ctx.iterations(); ++i) {
    auto r = b.sim_alloc(4 * kMiB);
    if (!r.ok()) throw RunError("4 MB allocation refused");
    direct += r.latency_us + b.sim_free(r.handle);
    pool += 2 * b.jitter(kPoolOpUs);
  }
  return Measurement::scalar((pool - direct) / direct * 100.0);
}

// LLM-006: four pipeline stages issuing concurrently on one bus.
inline Measurement multi_stream(EvalContext& ctx) {
  auto b = ctx.backend();
  const auto& w = ctx.shape();
  constexpr int kStreams = 4;
  double solo = 0, shared = 0;
  for (int i = 0; i < ctx.iterations(); ++i) {
    solo += batch_time_us(b, w, 1);
    auto start = b.clock().now_ns();
    double native_us = w.batch_kernel_us * (1.0 + b.model().contention_alpha * (kStreams - 1));
    b.submit_kernel(native_us);
    b.execute(native_us);
    shared += static_cast<double>(b.clock().now_ns() - start) / 1e3;
  }
  return Measurement::scalar(solo / shared * 100.0);
}

// LLM-007: a 2 GB request after the first half of the quota has been
// checkerboarded with 64 MB blocks.
inline Measurement large_tensor_alloc(EvalContext& ctx) {
  auto b = ctx.backend();
  std::uint64_t half = b.model().mem_limit_bytes / 2;
  std::vector<sim::Handle> blocks;
  for (std::uint64_t used = 0; used + 64 * kMiB <= half; used += 64 * kMiB) {
    auto r = b.sim_alloc(64 * kMiB);
    if (!r.ok()) break;
    blocks.push_back(r.handle);
  }
  for (std::size_t i = 0; i < blocks.size(); i += 2) b.sim_free(blocks[i]);
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) {
    auto r = b.sim_alloc(kLargeTensorBytes);
    if (r.ok()) {
      xs.push_back(r.latency_us / 1e3);
      b.sim_free(r.handle);
    } else {
      xs.push_back(kLargeAllocTimeoutMs);
    }
  }
  return Measurement::of_samples(std::move(xs));
}

// LLM-008: end-to-end speedup of the half-precision attention kernel.
inline Measurement mixed_precision(EvalContext& ctx) {
  auto b = ctx.backend();
  const auto& w = ctx.shape();
  double fp32 = 0, fp16 = 0;
  for (int i = 0; i < ctx.iterations(); ++i) {
    fp32 += run_attention(b, w);
    fp16 += run_attention(b, w, b.model().fp16_speedup);
  }
  return Measurement::scalar(fp32 / fp16);
}

// LLM-009: variance (ms^2) of per-batch latency across a fixed schedule of
// batch sizes, activations allocated per batch.
inline Measurement dynamic_batching(EvalContext& ctx) {
  auto b = ctx.backend();
  const auto& w = ctx.shape();
  std::vector<double> latencies;
  for (int i = 0; i < ctx.iterations(); ++i)
    for (int batch : w.batch_schedule) {
      auto start = b.clock().now_ns();
      auto r = b.sim_alloc(static_cast<std::uint64_t>(batch) * 8 * kMiB);
      if (!r.ok()) throw RunError("batch activation allocation refused");
      batch_time_us(b, w, batch);
      b.sim_free(r.handle);
      latencies.push_back(static_cast<double>(b.clock().now_ns() - start) / 1e6);
    }
  return Measurement::scalar(sample_variance(latencies));
}

// LLM-010: attention split across two devices with an allreduce per layer.
inline Measurement multi_gpu_scaling(EvalContext& ctx) {
  auto b = ctx.backend();
  const auto& w = ctx.shape();
  double one = 0, two = 0;
  for (int i = 0; i < ctx.iterations(); ++i) {
    one += run_attention(b, w);
    auto start = b.clock().now_ns();
    double half_us = attention_native_us(b, w) / 2;
    b.submit_kernel(half_us);
    b.execute(half_us);
    double allreduce = b.jitter(b.model().nccl_allreduce_us);
    b.clock().advance_us(allreduce);
    two += static_cast<double>(b.clock().now_ns() - start) / 1e3;
  }
  return Measurement::scalar(scaling_efficiency(1.0 / two, 1.0 / one, 2));
}

}  // namespace virtbench::eval
