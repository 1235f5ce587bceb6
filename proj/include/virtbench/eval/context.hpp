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
#include <cstdint>

#include "virtbench/calibration.hpp"
#include "virtbench/config.hpp"
#include "virtbench/error.hpp"
#include "virtbench/result.hpp"
#include "virtbench/sim/backend.hpp"
#include "virtbench/sim/rng.hpp"

namespace virtbench::eval {

using sim::kGiB;
using sim::kMiB;
using sim::SimBackend;
using sim::SystemMode;

// Everything an evaluator may touch. Backends are built on demand so each
// metric starts from a fresh device with its own seed.
class EvalContext {
 public:
  EvalContext(const RunConfig& config, const Calibration& calibration, MetricId id)
      : config_(config),
        calibration_(calibration),
        id_(id),
        seed_(config.seed ^ sim::fnv1a64(id.str())) {}

  const RunConfig& config() const { return config_; }
  const WorkloadShape& shape() const { return config_.workload; }
  MetricId id() const { return id_; }
  std::uint64_t seed() const { return seed_; }
  SystemMode mode() const { return config_.system; }
  int iterations() const { return config_.total_iterations(); }
  int tenants() const { return config_.contention_tenants(); }

  // Profile for `mode` with this run's limits applied. Native has no
  // enforcement layer, so limits do not apply to it.
  sim::BackendModel model(SystemMode mode) const {
    auto m = calibration_.profile(mode);
    m.rng_seed = seed_;
    if (mode != SystemMode::kNative) {
      if (config_.memory_limit_mb) {
        auto bytes = static_cast<std::uint64_t>(std::llround(*config_.memory_limit_mb * kMiB));
        if (bytes > m.mem_capacity_bytes)
          throw ConfigError("memory limit exceeds device capacity of " +
                            std::to_string(m.mem_capacity_bytes / kMiB) + " MB");
        m.mem_limit_bytes = bytes;
      }
      if (config_.compute_limit_percent) m.sm_limit_percent = *config_.compute_limit_percent;
    }
    return m;
  }

  SimBackend backend() const { return SimBackend(model(mode())); }
  SimBackend backend_with(sim::BackendModel m) const { return SimBackend(std::move(m)); }

  // Bare-metal reference for differential metrics, replaying the same seed.
  SimBackend native_reference() const { return SimBackend(model(SystemMode::kNative)); }

  // Workload randomness independent of the backend's own jitter stream, so
  // every mode sees the same request sequence.
  sim::SplitMix64 workload_rng() const { return sim::SplitMix64(seed_ ^ 0x5eed5eed5eed5eedULL); }

 private:
  const RunConfig& config_;
  const Calibration& calibration_;
  MetricId id_;
  std::uint64_t seed_;
};

using Evaluator = Measurement (*)(EvalContext&);

// Fills the quota with allocations of decreasing size. Returns bytes placed.
inline std::uint64_t fill_quota(SimBackend& b, std::vector<sim::Handle>* held = nullptr,
                                int tenant = 0) {
  std::uint64_t chunk = 64 * kMiB, placed = 0;
  while (true) {
    auto r = b.sim_alloc(chunk, tenant);
    if (r.ok()) {
      placed += chunk;
      if (held) held->push_back(r.handle);
      continue;
    }
    if (chunk <= kMiB) break;
    chunk /= 2;
  }
  return placed;
}

}  // namespace virtbench::eval
