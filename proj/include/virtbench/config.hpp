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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "virtbench/error.hpp"
#include "virtbench/sim/backend_model.hpp"
#include "virtbench/taxonomy.hpp"

namespace virtbench {

// Synthetic workload shapes. None of these come from measurements; they are
// fixed so that results stay comparable between runs.
struct WorkloadShape {
  // attention proxy (LLM-001/008/010)
  int batch = 8;
  int seq_len = 1024;
  int head_dim = 512;

  // generation loop (LLM-002/004)
  int gen_length = 128;
  int prefill_allocs = 710;
  int launches_per_pass = 616;
  double prefill_exec_us = 2800;
  double decode_exec_us = 2760;
  std::uint64_t activation_bytes = 256 * 1024;
  double kv_step_exec_us = 420;
  std::uint64_t kv_step_bytes = 256 * 1024;

  // batching (LLM-003/009)
  int scale_batch = 8;
  double batch_kernel_us = 1000;
  std::vector<int> batch_schedule = {1, 4, 2, 8, 1, 16};

  // end-to-end throughput (OH-010)
  int workload_kernels = 20;
  double workload_kernel_us = 750;

  // multi-tenant scenarios when --processes is 1
  int contention_tenants = 4;

  // fragmentation churn (FRAG-*)
  int churn_allocs = 2000;
  int churn_rounds = 5;
  std::uint64_t churn_min_bytes = 1ULL << 20;
  std::uint64_t churn_max_bytes = 64ULL << 20;
};

struct RunConfig {
  sim::SystemMode system = sim::SystemMode::kNative;
  int iterations = 100;
  int warmup = 10;
  int tenants = 1;
  std::optional<double> memory_limit_mb;
  std::optional<double> compute_limit_percent;
  std::optional<std::vector<MetricId>> metric_filter;
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> compare_path;
  int jobs = 1;  // metrics evaluated concurrently; results do not depend on it
  WorkloadShape workload;

  void validate() const {
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
    if (warmup < 0) throw ConfigError("warmup must be >= 0");
    if (tenants < 1) throw ConfigError("tenants must be >= 1");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    if (compute_limit_percent && !(*compute_limit_percent > 0 && *compute_limit_percent <= 100))
      throw ConfigError("compute limit must lie in (0,100]");
    if (memory_limit_mb && !(*memory_limit_mb >= 1))
      throw ConfigError("memory limit must be at least 1 MB");
    if (metric_filter && metric_filter->empty()) throw ConfigError("empty metric filter");
  }

  int total_iterations() const { return warmup + iterations; }

  // Tenant count for cross-tenant scenarios.
  int contention_tenants() const { return tenants > 1 ? tenants : workload.contention_tenants; }
};

}  // namespace virtbench
