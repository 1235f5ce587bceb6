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

// The fixed 56-metric taxonomy: categories, identifiers, units and the
// direction in which each metric improves.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "virtbench/error.hpp"

namespace virtbench {

enum class Category {
  kOverhead,
  kIsolation,
  kLlm,
  kBandwidth,
  kCache,
  kPcie,
  kNccl,
  kScheduling,
  kFragmentation,
  kErrorRecovery,
};

inline constexpr std::size_t kCategoryCount = 10;
inline constexpr std::size_t kMetricCount = 56;

inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::kOverhead,      Category::kIsolation,    Category::kLlm,
    Category::kBandwidth,     Category::kCache,        Category::kPcie,
    Category::kNccl,          Category::kScheduling,   Category::kFragmentation,
    Category::kErrorRecovery,
};

struct CategoryInfo {
  std::string_view tag;           // id prefix, "OH"
  std::string_view key;           // calibration / json key, "overhead"
  std::string_view display_name;  // "Overhead"
  int metric_count;
};

inline constexpr std::array<CategoryInfo, kCategoryCount> kCategoryInfo = {{
    {"OH", "overhead", "Overhead", 10},
    {"IS", "isolation", "Isolation", 10},
    {"LLM", "llm", "LLM", 10},
    {"BW", "bandwidth", "Memory Bandwidth", 4},
    {"CACHE", "cache", "Cache Isolation", 4},
    {"PCIE", "pcie", "PCIe", 4},
    {"NCCL", "nccl", "NCCL/P2P", 4},
    {"SCHED", "scheduling", "Scheduling", 4},
    {"FRAG", "fragmentation", "Fragmentation", 3},
    {"ERR", "error_recovery", "Error Recovery", 3},
}};

constexpr std::size_t index_of(Category c) { return static_cast<std::size_t>(c); }
constexpr const CategoryInfo& info(Category c) { return kCategoryInfo[index_of(c)]; }

inline std::optional<Category> category_from_tag(std::string_view tag) {
  for (auto c : kAllCategories)
    if (info(c).tag == tag) return c;
  return std::nullopt;
}

inline std::optional<Category> category_from_key(std::string_view key) {
  for (auto c : kAllCategories)
    if (info(c).key == key) return c;
  return std::nullopt;
}

inline Category category_from_name(std::string_view name) {
  for (auto c : kAllCategories)
    if (info(c).display_name == name || info(c).key == name) return c;
  throw NotFoundError("unknown category '" + std::string(name) + "'");
}

class MetricId {
 public:
  constexpr MetricId(Category category, int ordinal)
      : category_(category), ordinal_(ordinal) {}

  // Accepts exactly the canonical form, e.g. "OH-001" or "CACHE-004".
  // Returns nullopt for anything malformed or out of the category's range.
  static std::optional<MetricId> parse(std::string_view text) {
    auto dash = text.find('-');
    if (dash == std::string_view::npos || text.size() - dash - 1 != 3)
      return std::nullopt;
    auto category = category_from_tag(text.substr(0, dash));
    if (!category) return std::nullopt;
    int ordinal = 0;
    for (char ch : text.substr(dash + 1)) {
      if (ch < '0' || ch > '9') return std::nullopt;
      ordinal = ordinal * 10 + (ch - '0');
    }
    if (ordinal < 1 || ordinal > info(*category).metric_count) return std::nullopt;
    return MetricId(*category, ordinal);
  }

  // True when the text has the id shape (known prefix, three digits) even if
  // the ordinal does not exist. Lets callers tell "malformed" from "unknown".
  static bool well_formed(std::string_view text) {
    auto dash = text.find('-');
    if (dash == std::string_view::npos || text.size() - dash - 1 != 3) return false;
    if (!category_from_tag(text.substr(0, dash))) return false;
    for (char ch : text.substr(dash + 1))
      if (ch < '0' || ch > '9') return false;
    return true;
  }

  static MetricId require(std::string_view text) {
    auto id = parse(text);
    if (!id) throw NotFoundError("unknown metric id '" + std::string(text) + "'");
    return *id;
  }

  constexpr Category category() const { return category_; }
  constexpr int ordinal() const { return ordinal_; }

  std::string str() const {
    std::string out(info(category_).tag);
    out += '-';
    out += static_cast<char>('0' + ordinal_ / 100);
    out += static_cast<char>('0' + (ordinal_ / 10) % 10);
    out += static_cast<char>('0' + ordinal_ % 10);
    return out;
  }

  // Position in catalog order, 0..55.
  constexpr std::size_t flat_index() const {
    std::size_t base = 0;
    for (std::size_t i = 0; i < index_of(category_); ++i)
      base += static_cast<std::size_t>(kCategoryInfo[i].metric_count);
    return base + static_cast<std::size_t>(ordinal_ - 1);
  }

  friend constexpr bool operator==(MetricId, MetricId) = default;
  friend constexpr auto operator<=>(const MetricId& a, const MetricId& b) {
    return a.flat_index() <=> b.flat_index();
  }

 private:
  Category category_;
  int ordinal_;
};

enum class Unit {
  kMicroseconds,
  kNanoseconds,
  kMilliseconds,
  kPercent,
  kRatio01,
  kRatio,
  kGBps,
  kTflops,
  kCount,
  kBoolean,
  kAllocsPerSecond,
  kCv,
  kVariance,
  kFactor,
};

inline constexpr std::array<std::string_view, 14> kUnitNames = {
    "us", "ns", "ms", "%", "0-1", "ratio", "GB/s",
    "TFLOPS", "count", "bool", "allocs/s", "CV", "variance", "factor",
};

constexpr std::string_view to_string(Unit u) { return kUnitNames[static_cast<std::size_t>(u)]; }

inline Unit unit_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kUnitNames.size(); ++i)
    if (kUnitNames[i] == s) return static_cast<Unit>(i);
  throw CatalogError("unknown unit '" + std::string(s) + "'");
}

enum class Direction { kLowerBetter, kHigherBetter, kBooleanTrue };

constexpr std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::kLowerBetter: return "lower_better";
    case Direction::kHigherBetter: return "higher_better";
    case Direction::kBooleanTrue: return "boolean_true";
  }
  return "";
}

inline Direction direction_from_string(std::string_view s) {
  for (auto d : {Direction::kLowerBetter, Direction::kHigherBetter, Direction::kBooleanTrue})
    if (to_string(d) == s) return d;
  throw CatalogError("unknown direction '" + std::string(s) + "'");
}

struct TaxonomyRow {
  std::string_view id;
  std::string_view name;
  std::string_view description;
  Unit unit;
  Direction direction;
};

namespace detail {
using U = Unit;
using D = Direction;
inline constexpr auto kLo = Direction::kLowerBetter;
inline constexpr auto kHi = Direction::kHigherBetter;
inline constexpr auto kTrue = Direction::kBooleanTrue;
}  // namespace detail

// Catalog order. MIG baselines are calibration data and live elsewhere.
inline constexpr std::array<TaxonomyRow, kMetricCount> kTaxonomy = {{
    {"OH-001", "Kernel Launch Latency", "Time from cuLaunchKernel to execution", Unit::kMicroseconds, detail::kLo},
    {"OH-002", "Memory Allocation Latency", "cuMemAlloc completion time", Unit::kMicroseconds, detail::kLo},
    {"OH-003", "Memory Free Latency", "cuMemFree completion time", Unit::kMicroseconds, detail::kLo},
    {"OH-004", "Context Creation Overhead", "Additional context creation time", Unit::kMicroseconds, detail::kLo},
    {"OH-005", "API Interception Overhead", "dlsym hook overhead per call", Unit::kNanoseconds, detail::kLo},
    {"OH-006", "Shared Region Lock Contention", "Semaphore wait time", Unit::kMicroseconds, detail::kLo},
    {"OH-007", "Memory Tracking Overhead", "Per-allocation accounting cost", Unit::kNanoseconds, detail::kLo},
    {"OH-008", "Rate Limiter Overhead", "Token bucket check latency", Unit::kNanoseconds, detail::kLo},
    {"OH-009", "NVML Polling Overhead", "CPU cycles in monitoring", Unit::kPercent, detail::kLo},
    {"OH-010", "Total Throughput Degradation", "End-to-end performance loss", Unit::kPercent, detail::kLo},

    {"IS-001", "Memory Limit Accuracy", "Actual vs configured limit", Unit::kPercent, detail::kHi},
    {"IS-002", "Memory Limit Enforcement", "Over-allocation detection time", Unit::kMicroseconds, detail::kLo},
    {"IS-003", "SM Utilization Accuracy", "Actual vs configured SM limit", Unit::kPercent, detail::kHi},
    {"IS-004", "SM Limit Response Time", "Utilization adjustment latency", Unit::kMilliseconds, detail::kLo},
    {"IS-005", "Cross-Tenant Memory Isolation", "Memory leak detection", Unit::kBoolean, detail::kTrue},
    {"IS-006", "Cross-Tenant Compute Isolation", "Compute interference ratio", Unit::kRatio01, detail::kHi},
    {"IS-007", "QoS Consistency", "Performance variance under contention", Unit::kCv, detail::kLo},
    {"IS-008", "Fairness Index", "Jain's fairness across tenants", Unit::kRatio01, detail::kHi},
    {"IS-009", "Noisy Neighbor Impact", "Degradation from aggressive neighbor", Unit::kPercent, detail::kLo},
    {"IS-010", "Fault Isolation", "Error propagation prevention", Unit::kBoolean, detail::kTrue},

    {"LLM-001", "Attention Kernel Throughput", "Transformer attention performance", Unit::kTflops, detail::kHi},
    {"LLM-002", "KV Cache Allocation Speed", "Dynamic cache growth handling", Unit::kAllocsPerSecond, detail::kHi},
    {"LLM-003", "Batch Size Scaling", "Throughput vs batch size curve", Unit::kRatio, detail::kHi},
    {"LLM-004", "Token Generation Latency", "TTFT and inter-token latency", Unit::kMilliseconds, detail::kLo},
    {"LLM-005", "Memory Pool Efficiency", "Pool allocation overhead", Unit::kPercent, detail::kLo},
    {"LLM-006", "Multi-Stream Performance", "Pipeline parallel efficiency", Unit::kPercent, detail::kHi},
    {"LLM-007", "Large Tensor Allocation", "Large allocation handling", Unit::kMilliseconds, detail::kLo},
    {"LLM-008", "Mixed Precision Support", "FP16/BF16 kernel ratio", Unit::kRatio, detail::kHi},
    {"LLM-009", "Dynamic Batching Impact", "Variable batch handling", Unit::kVariance, detail::kLo},
    {"LLM-010", "Multi-GPU Scaling", "Tensor parallel efficiency", Unit::kFactor, detail::kHi},

    {"BW-001", "Memory Bandwidth Isolation", "Bandwidth under contention", Unit::kPercent, detail::kHi},
    {"BW-002", "Bandwidth Fairness Index", "Jain's fairness for bandwidth", Unit::kRatio01, detail::kHi},
    {"BW-003", "Memory Bus Saturation Point", "Streams to reach 95% BW", Unit::kCount, detail::kLo},
    {"BW-004", "Bandwidth Interference Impact", "BW drop from competition", Unit::kPercent, detail::kLo},

    {"CACHE-001", "L2 Cache Hit Rate", "Hit rate under multi-tenant load", Unit::kPercent, detail::kHi},
    {"CACHE-002", "Cache Eviction Rate", "Evictions from other tenants", Unit::kPercent, detail::kLo},
    {"CACHE-003", "Working Set Collision Impact", "Perf drop from cache overlap", Unit::kPercent, detail::kLo},
    {"CACHE-004", "Cache Contention Overhead", "Latency from L2 contention", Unit::kPercent, detail::kLo},

    {"PCIE-001", "Host-to-Device Bandwidth", "H2D transfer rate", Unit::kGBps, detail::kHi},
    {"PCIE-002", "Device-to-Host Bandwidth", "D2H transfer rate", Unit::kGBps, detail::kHi},
    {"PCIE-003", "PCIe Contention Impact", "BW drop under multi-tenant", Unit::kPercent, detail::kLo},
    {"PCIE-004", "Pinned Memory Performance", "Pinned vs pageable ratio", Unit::kRatio, detail::kHi},

    {"NCCL-001", "AllReduce Latency", "Collective allreduce time", Unit::kMicroseconds, detail::kLo},
    {"NCCL-002", "AllGather Bandwidth", "Allgather achieved bandwidth", Unit::kGBps, detail::kHi},
    {"NCCL-003", "P2P GPU Bandwidth", "Direct GPU-to-GPU transfer", Unit::kGBps, detail::kHi},
    {"NCCL-004", "Broadcast Bandwidth", "Broadcast collective bandwidth", Unit::kGBps, detail::kHi},

    {"SCHED-001", "Context Switch Latency", "CUDA context switch time", Unit::kMicroseconds, detail::kLo},
    {"SCHED-002", "Kernel Launch Overhead", "Minimal kernel launch time", Unit::kMicroseconds, detail::kLo},
    {"SCHED-003", "Stream Concurrency Efficiency", "Concurrent stream efficiency", Unit::kPercent, detail::kHi},
    {"SCHED-004", "Preemption Latency", "High-priority preemption delay", Unit::kMilliseconds, detail::kLo},

    {"FRAG-001", "Fragmentation Index", "Memory fragmentation level", Unit::kPercent, detail::kLo},
    {"FRAG-002", "Allocation Latency Degradation", "Latency increase with fragmentation", Unit::kRatio, detail::kLo},
    {"FRAG-003", "Memory Compaction Efficiency", "Memory reclaimed after defrag", Unit::kPercent, detail::kHi},

    {"ERR-001", "Error Detection Latency", "Time to detect CUDA errors", Unit::kMicroseconds, detail::kLo},
    {"ERR-002", "Error Recovery Time", "Time to recover GPU state", Unit::kMicroseconds, detail::kLo},
    {"ERR-003", "Graceful Degradation Score", "Resource exhaustion handling", Unit::kPercent, detail::kHi},
}};

}  // namespace virtbench
