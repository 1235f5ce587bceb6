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

#include "virtbench/eval/bandwidth.hpp"
#include "virtbench/eval/cache.hpp"
#include "virtbench/eval/context.hpp"
#include "virtbench/eval/error_recovery.hpp"
#include "virtbench/eval/fragmentation.hpp"
#include "virtbench/eval/isolation.hpp"
#include "virtbench/eval/llm.hpp"
#include "virtbench/eval/nccl.hpp"
#include "virtbench/eval/overhead.hpp"
#include "virtbench/eval/pcie.hpp"
#include "virtbench/eval/scheduling.hpp"
#include "virtbench/taxonomy.hpp"

namespace virtbench::eval {

// Catalog order, OH-001 through ERR-003.
inline constexpr std::array<Evaluator, kMetricCount> kEvaluators = {
    launch_latency, alloc_latency, free_latency, context_creation, interception_overhead,
    lock_contention, tracking_overhead, rate_limiter_overhead, polling_overhead,
    throughput_degradation,

    memory_limit_accuracy, memory_limit_enforcement, sm_utilization_accuracy, sm_limit_response,
    cross_tenant_memory_isolation, cross_tenant_compute_isolation, qos_consistency,
    fairness_index, noisy_neighbor, fault_isolation,

    attention_throughput, kv_cache_alloc_rate, batch_scaling, token_latency,
    memory_pool_efficiency, multi_stream, large_tensor_alloc, mixed_precision,
    dynamic_batching, multi_gpu_scaling,

    bandwidth_isolation, bandwidth_fairness, bus_saturation, bandwidth_interference,

    l2_hit_rate, eviction_rate, working_set_collision, cache_contention,

    h2d_bandwidth, d2h_bandwidth, pcie_contention, pinned_memory,

    allreduce_latency, allgather_bandwidth, p2p_bandwidth, broadcast_bandwidth,

    context_switch, contended_launch, stream_concurrency, preemption_latency,

    fragmentation_level, alloc_latency_degradation, compaction_efficiency,

    error_detection, error_recovery, graceful_degradation,
};

inline Evaluator evaluator_for(MetricId id) { return kEvaluators[id.flat_index()]; }

}  // namespace virtbench::eval
