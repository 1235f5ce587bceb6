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
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "virtbench/error.hpp"

namespace virtbench::sim {

enum class SystemMode { kNative, kHami, kFcsp, kMig };

inline constexpr std::array<SystemMode, 4> kAllModes = {
    SystemMode::kNative, SystemMode::kHami, SystemMode::kFcsp, SystemMode::kMig};

constexpr std::string_view to_string(SystemMode m) {
  switch (m) {
    case SystemMode::kNative: return "native";
    case SystemMode::kHami: return "hami";
    case SystemMode::kFcsp: return "fcsp";
    case SystemMode::kMig: return "mig";
  }
  return "";
}

inline std::optional<SystemMode> mode_from_string(std::string_view s) {
  for (auto m : kAllModes)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

// Software virtualization layers sit between the tenant and the driver and
// pay per-call interception costs. Native and MIG do not.
constexpr bool is_software_virtualized(SystemMode m) {
  return m == SystemMode::kHami || m == SystemMode::kFcsp;
}

// How a compute limit is enforced: not at all, by a hardware partition, or
// by the interception layer's token bucket.
enum class Enforcement { kNone, kPartition, kTokenBucket };

constexpr Enforcement enforcement_of(SystemMode m) {
  switch (m) {
    case SystemMode::kNative: return Enforcement::kNone;
    case SystemMode::kMig: return Enforcement::kPartition;
    default: return Enforcement::kTokenBucket;
  }
}

// Calibrated parameters describing one system under test. Latencies are
// nominal means; jitter_fraction spreads sampled API latencies uniformly
// by +/- that fraction.
struct BackendModel {
  SystemMode mode = SystemMode::kNative;

  // driver costs
  double base_launch_us = 0;
  double base_alloc_us = 0;
  double base_free_us = 0;
  double base_context_us = 0;
  double base_call_ns = 0;  // a pass-through driver call (attribute query)

  // interception layer costs, zero for native and mig
  double hook_ns = 0;
  double quota_check_ns = 0;
  double tracking_ns = 0;
  double rate_check_ns = 0;
  double lock_mean_us = 0;
  double lock_jitter_us = 0;

  double jitter_fraction = 0;

  // memory
  std::uint64_t mem_capacity_bytes = 0;
  std::uint64_t mem_limit_bytes = 0;
  double quota_reserve_fraction = 0;  // of the limit, charged by the layer itself
  double alloc_scan_ns = 0;           // first-fit search cost per free block visited
  double alloc_us_per_gb = 0;         // page mapping cost for large allocations

  // compute
  double sm_limit_percent = 100;
  double limiter_burst_ms = 0;
  double sm_util_bias = 0;     // relative error between charged tokens and SM time used
  double exec_slowdown = 0;    // kernel execution inflation under the layer
  double sm_interference = 0;  // execution inflation per co-running tenant
  double tenant_skew = 0;      // share loss of the last tenant in round-robin order
  double peak_tflops = 0;
  double fp16_speedup = 1;

  // memory bandwidth and cache
  double solo_bandwidth_gbps = 0;
  double contention_alpha = 0;
  double l2_hit_solo = 0;
  double l2_eviction_per_tenant = 0;
  double l2_miss_penalty = 1;

  // host transfers and collectives
  double pcie_h2d_gbps = 0;
  double pcie_d2h_gbps = 0;
  double pinned_speedup = 1;
  double pcie_contention_alpha = 0;
  double nccl_allreduce_us = 0;
  double nccl_gather_gbps = 0;
  double p2p_gbps = 0;
  double bcast_gbps = 0;

  // scheduling, monitoring, faults
  double ctx_switch_us = 0;
  double preempt_ms = 0;
  double poll_interval_ms = 100;
  double poll_cost_us = 0;
  double fault_detect_us = 0;
  double fault_recover_us = 0;
  double compaction_pinned_fraction = 0;
  bool crash_on_fault = false;

  std::uint64_t rng_seed = 0;

  void validate() const;
};

using ParamMember = std::variant<double BackendModel::*, std::uint64_t BackendModel::*,
                                 bool BackendModel::*>;

struct ParamField {
  std::string_view name;
  ParamMember member;
  bool latency;  // participates in the native <= mig <= fcsp <= hami ordering
};

inline constexpr ParamField kParamFields[] = {
    {"base_launch_us", &BackendModel::base_launch_us, true},
    {"base_alloc_us", &BackendModel::base_alloc_us, true},
    {"base_free_us", &BackendModel::base_free_us, true},
    {"base_context_us", &BackendModel::base_context_us, true},
    {"base_call_ns", &BackendModel::base_call_ns, true},
    {"hook_ns", &BackendModel::hook_ns, true},
    {"quota_check_ns", &BackendModel::quota_check_ns, true},
    {"tracking_ns", &BackendModel::tracking_ns, true},
    {"rate_check_ns", &BackendModel::rate_check_ns, true},
    {"lock_mean_us", &BackendModel::lock_mean_us, true},
    {"lock_jitter_us", &BackendModel::lock_jitter_us, false},
    {"jitter_fraction", &BackendModel::jitter_fraction, false},
    {"mem_capacity_bytes", &BackendModel::mem_capacity_bytes, false},
    {"mem_limit_bytes", &BackendModel::mem_limit_bytes, false},
    {"quota_reserve_fraction", &BackendModel::quota_reserve_fraction, false},
    {"alloc_scan_ns", &BackendModel::alloc_scan_ns, true},
    {"alloc_us_per_gb", &BackendModel::alloc_us_per_gb, true},
    {"sm_limit_percent", &BackendModel::sm_limit_percent, false},
    {"limiter_burst_ms", &BackendModel::limiter_burst_ms, false},
    {"sm_util_bias", &BackendModel::sm_util_bias, false},
    {"exec_slowdown", &BackendModel::exec_slowdown, false},
    {"sm_interference", &BackendModel::sm_interference, false},
    {"tenant_skew", &BackendModel::tenant_skew, false},
    {"peak_tflops", &BackendModel::peak_tflops, false},
    {"fp16_speedup", &BackendModel::fp16_speedup, false},
    {"solo_bandwidth_gbps", &BackendModel::solo_bandwidth_gbps, false},
    {"contention_alpha", &BackendModel::contention_alpha, false},
    {"l2_hit_solo", &BackendModel::l2_hit_solo, false},
    {"l2_eviction_per_tenant", &BackendModel::l2_eviction_per_tenant, false},
    {"l2_miss_penalty", &BackendModel::l2_miss_penalty, false},
    {"pcie_h2d_gbps", &BackendModel::pcie_h2d_gbps, false},
    {"pcie_d2h_gbps", &BackendModel::pcie_d2h_gbps, false},
    {"pinned_speedup", &BackendModel::pinned_speedup, false},
    {"pcie_contention_alpha", &BackendModel::pcie_contention_alpha, false},
    {"nccl_allreduce_us", &BackendModel::nccl_allreduce_us, true},
    {"nccl_gather_gbps", &BackendModel::nccl_gather_gbps, false},
    {"p2p_gbps", &BackendModel::p2p_gbps, false},
    {"bcast_gbps", &BackendModel::bcast_gbps, false},
    {"ctx_switch_us", &BackendModel::ctx_switch_us, true},
    {"preempt_ms", &BackendModel::preempt_ms, true},
    {"poll_interval_ms", &BackendModel::poll_interval_ms, false},
    {"poll_cost_us", &BackendModel::poll_cost_us, true},
    {"fault_detect_us", &BackendModel::fault_detect_us, true},
    {"fault_recover_us", &BackendModel::fault_recover_us, true},
    {"compaction_pinned_fraction", &BackendModel::compaction_pinned_fraction, false},
    {"crash_on_fault", &BackendModel::crash_on_fault, false},
    {"rng_seed", &BackendModel::rng_seed, false},
};

inline const ParamField* find_param(std::string_view name) {
  for (const auto& f : kParamFields)
    if (f.name == name) return &f;
  return nullptr;
}

inline void BackendModel::validate() const {
  auto fail = [this](const std::string& what) {
    throw ConfigError("invalid " + std::string(to_string(mode)) + " model: " + what);
  };
  for (const auto& f : kParamFields) {
    if (const auto* p = std::get_if<double BackendModel::*>(&f.member)) {
      double v = this->*(*p);
      if (!std::isfinite(v) || v < 0) fail(std::string(f.name) + " must be finite and >= 0");
    }
  }
  if (mem_capacity_bytes == 0 || mem_limit_bytes == 0) fail("memory sizes must be positive");
  if (mem_limit_bytes > mem_capacity_bytes) fail("mem_limit_bytes exceeds mem_capacity_bytes");
  if (!(sm_limit_percent > 0 && sm_limit_percent <= 100)) fail("sm_limit_percent outside (0,100]");
  if (l2_hit_solo > 1 || l2_eviction_per_tenant > 1) fail("cache rates must lie in [0,1]");
  if (quota_reserve_fraction >= 1) fail("quota_reserve_fraction must be < 1");
  if (compaction_pinned_fraction > 1) fail("compaction_pinned_fraction must be <= 1");
  if (poll_interval_ms <= 0) fail("poll_interval_ms must be positive");
  if (pcie_h2d_gbps <= 0 || pcie_d2h_gbps <= 0 || pinned_speedup <= 0)
    fail("PCIe rates must be positive");
  if (nccl_allreduce_us <= 0 || nccl_gather_gbps <= 0 || p2p_gbps <= 0 || bcast_gbps <= 0)
    fail("collective rates must be positive");
  if (solo_bandwidth_gbps <= 0 || peak_tflops <= 0 || fp16_speedup <= 0 || l2_miss_penalty < 1)
    fail("device throughput parameters must be positive");
  if (!is_software_virtualized(mode) &&
      (hook_ns != 0 || quota_check_ns != 0 || tracking_ns != 0 || rate_check_ns != 0))
    fail("interception costs must be zero without a software layer");
}

}  // namespace virtbench::sim
