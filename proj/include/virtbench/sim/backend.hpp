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
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "virtbench/error.hpp"
#include "virtbench/sim/backend_model.hpp"
#include "virtbench/sim/clock.hpp"
#include "virtbench/sim/heap.hpp"
#include "virtbench/sim/rng.hpp"
#include "virtbench/sim/token_bucket.hpp"

namespace virtbench::sim {

inline constexpr std::uint64_t kMiB = 1ULL << 20;
inline constexpr std::uint64_t kGiB = 1ULL << 30;

// One "token" is one microsecond of whole-GPU SM time.
inline constexpr double kTokensPerSecondAtFullGpu = 1e6;

struct KernelOutcome {
  std::uint64_t submitted_at_ns = 0;
  std::uint64_t admitted_at_ns = 0;
  double launch_overhead_us = 0;
  double rate_check_ns = 0;
  double effective_limit_percent = 100;
};

enum class AllocStatus { kOk, kQuotaDenied, kOom };

struct AllocOutcome {
  AllocStatus status = AllocStatus::kOk;
  Handle handle = 0;
  double latency_us = 0;
  double tracking_ns = 0;
  std::size_t blocks_scanned = 0;

  bool ok() const { return status == AllocStatus::kOk; }
};

enum class FaultKind { kOomExhaustion, kKernelError };

struct FaultReport {
  double detect_us = 0;
  double recover_us = 0;
  bool no_crash = true;
  bool error_returned = true;
  bool recovered = true;
};

// Raised by any operation on a backend whose device context was lost to an
// injected crash.
class DeviceLostError : public RunError {
 public:
  using RunError::RunError;
};

// A simulated GPU plus (optionally) the interception layer in front of it.
// Single-owner: every call advances the one virtual clock in program order,
// so concurrent use from several threads is not supported.
class SimBackend {
 public:
  explicit SimBackend(BackendModel model)
      : model_(validated(std::move(model))), rng_(model_.rng_seed), heap_(model_.mem_limit_bytes) {
    sm_limit_ = model_.sm_limit_percent;
    bucket_ = TokenBucket::full(bucket_max_for(sm_limit_), rate_for(sm_limit_), 0);
    if (is_software_virtualized(model_.mode))
      reserved_bytes_ = static_cast<std::uint64_t>(model_.quota_reserve_fraction *
                                                   static_cast<double>(model_.mem_limit_bytes));
  }

  const BackendModel& model() const { return model_; }
  SystemMode mode() const { return model_.mode; }
  bool virtualized() const { return is_software_virtualized(model_.mode); }
  VirtualClock& clock() { return clock_; }
  const VirtualClock& clock() const { return clock_; }
  SimHeap& heap() { return heap_; }
  const SimHeap& heap() const { return heap_; }
  SplitMix64& rng() { return rng_; }

  // Number of tenants sharing the device; drives lock contention.
  void set_tenants(int n) {
    if (n < 1) throw PreconditionError("tenant count must be >= 1");
    tenants_ = n;
  }
  int tenants() const { return tenants_; }

  double jitter(double nominal) {
    if (model_.jitter_fraction == 0 || nominal == 0) return nominal;
    return nominal * (1.0 + model_.jitter_fraction * (2.0 * rng_.uniform() - 1.0));
  }

  // A throughput observed over a transfer whose duration carries the usual
  // measurement jitter.
  double measured_rate(double nominal) { return nominal / jitter(1.0); }

  // Semaphore wait on the layer's shared region. Mean grows linearly with the
  // number of other tenants; uniform jitter around it.
  double sample_lock_wait(int tenants) {
    if (tenants < 1) throw PreconditionError("tenant count must be >= 1");
    if (!virtualized() || tenants == 1) return 0;
    double mean = model_.lock_mean_us * (tenants - 1);
    double draw = mean + model_.lock_jitter_us * (2.0 * rng_.uniform() - 1.0);
    return std::max(0.0, draw);
  }

  KernelOutcome submit_kernel(double work_tokens) {
    ensure_alive();
    if (work_tokens < 0) throw PreconditionError("negative kernel work");
    KernelOutcome out;
    out.submitted_at_ns = clock_.now_ns();
    double overhead = jitter(model_.base_launch_us);
    if (virtualized()) {
      out.rate_check_ns = jitter(model_.rate_check_ns);
      overhead += (jitter(model_.hook_ns) + out.rate_check_ns) / 1e3;
      overhead += sample_lock_wait(tenants_);
    }
    clock_.advance_us(overhead);
    out.launch_overhead_us = overhead;

    apply_pending_limit();
    switch (enforcement_of(model_.mode)) {
      case Enforcement::kNone:
        break;
      case Enforcement::kTokenBucket:
        admit_tokens(work_tokens);
        break;
      case Enforcement::kPartition: {
        if (busy_until_ns_ > clock_.now_ns()) clock_.advance_to(busy_until_ns_);
        double occupancy_us = work_tokens / (sm_limit_ / 100.0);
        busy_until_ns_ = clock_.now_ns() + static_cast<std::uint64_t>(std::llround(occupancy_us * 1e3));
        break;
      }
    }
    out.admitted_at_ns = clock_.now_ns();
    out.effective_limit_percent = sm_limit_;
    return out;
  }

  // Kernel execution time for work that takes `native_us` on bare metal,
  // with `co_runners` other tenants' kernels on the device.
  double kernel_exec_us(double native_us, int co_runners = 0) const {
    return native_us * (1.0 + model_.exec_slowdown) *
           (1.0 + model_.sm_interference * std::max(0, co_runners));
  }

  // Synchronous execution: advances the clock by the execution time.
  double execute(double native_us, int co_runners = 0) {
    ensure_alive();
    double t = kernel_exec_us(native_us, co_runners);
    clock_.advance_us(t);
    return t;
  }

  AllocOutcome sim_alloc(std::uint64_t bytes, int tenant = 0) {
    ensure_alive();
    if (bytes == 0) throw PreconditionError("allocation size must be positive");
    AllocOutcome out;
    double latency = 0;
    bool over_quota = quota_used() + bytes > model_.mem_limit_bytes;
    if (virtualized()) {
      // hook, then the quota check against the shared region, then the driver
      latency += (jitter(model_.hook_ns) + jitter(model_.quota_check_ns)) / 1e3;
      latency += sample_lock_wait(tenants_);
      if (over_quota) {
        out.status = AllocStatus::kQuotaDenied;
        return finish(out, latency);
      }
    } else if (over_quota) {
      // Driver-side refusal: a MIG partition boundary, or the device itself.
      latency += jitter(model_.base_alloc_us);
      out.status = model_.mode == SystemMode::kMig ? AllocStatus::kQuotaDenied : AllocStatus::kOom;
      return finish(out, latency);
    }
    latency += jitter(model_.base_alloc_us);
    auto placed = heap_.allocate(bytes);
    out.blocks_scanned = placed ? placed->blocks_scanned : heap_.last_failed_scan();
    latency += static_cast<double>(out.blocks_scanned) * model_.alloc_scan_ns / 1e3;
    if (!placed) {
      out.status = AllocStatus::kOom;
      return finish(out, latency);
    }
    latency += static_cast<double>(bytes) / static_cast<double>(kGiB) * model_.alloc_us_per_gb;
    if (virtualized()) {
      out.tracking_ns = jitter(model_.tracking_ns);
      latency += out.tracking_ns / 1e3;
    }
    out.handle = placed->handle;
    owner_.emplace(placed->handle, tenant);
    return finish(out, latency);
  }

  double sim_free(Handle h) {
    ensure_alive();
    heap_.release(h);  // throws InvalidFreeError for unknown handles
    owner_.erase(h);
    double latency = jitter(model_.base_free_us);
    if (virtualized()) {
      latency += (jitter(model_.hook_ns) + jitter(model_.tracking_ns)) / 1e3;
      latency += sample_lock_wait(tenants_);
    }
    clock_.advance_us(latency);
    return latency;
  }

  double create_context() {
    ensure_alive();
    double latency = jitter(model_.base_context_us);
    if (virtualized()) latency += jitter(model_.hook_ns) / 1e3;
    clock_.advance_us(latency);
    return latency;
  }

  // An intercepted call that does no resource work (e.g. an attribute query).
  double passthrough_call_ns() {
    ensure_alive();
    double ns = jitter(model_.base_call_ns);
    if (virtualized()) ns += jitter(model_.hook_ns);
    clock_.advance_us(ns / 1e3);
    return ns;
  }

  double context_switch_us() {
    ensure_alive();
    double latency = jitter(model_.ctx_switch_us);
    if (virtualized()) latency += jitter(model_.hook_ns) / 1e3;
    clock_.advance_us(latency);
    return latency;
  }

  // Per-tenant bandwidth when `tenants` streams share the memory bus.
  double effective_bandwidth(int tenants) const {
    if (tenants < 1) throw PreconditionError("tenant count must be >= 1");
    return model_.solo_bandwidth_gbps / (1.0 + model_.contention_alpha * (tenants - 1));
  }

  double aggregate_bandwidth(int tenants) const { return tenants * effective_bandwidth(tenants); }

  double cache_hit_rate(int tenants, double working_set_overlap) const {
    if (tenants < 1) throw PreconditionError("tenant count must be >= 1");
    if (working_set_overlap < 0 || working_set_overlap > 1)
      throw RangeError("working set overlap outside [0,1]");
    double hit = model_.l2_hit_solo -
                 model_.l2_eviction_per_tenant * (tenants - 1) * working_set_overlap;
    return std::max(0.0, hit);
  }

  FaultReport inject_fault(FaultKind kind) {
    ensure_alive();
    FaultReport report;
    if (model_.crash_on_fault) {
      crashed_ = true;
      report.detect_us = jitter(model_.fault_detect_us);
      report.recover_us = 0;
      report.no_crash = report.error_returned = report.recovered = false;
      return report;
    }
    if (kind == FaultKind::kKernelError) {
      report.detect_us = jitter(model_.fault_detect_us);
      if (virtualized()) report.detect_us += jitter(model_.hook_ns) / 1e3;
      clock_.advance_us(report.detect_us);
      report.recover_us = jitter(model_.fault_recover_us);
      clock_.advance_us(report.recover_us);
      return report;
    }

    // Exhaust the quota in eighths, observe the refusal, release, retry.
    std::uint64_t chunk = std::max<std::uint64_t>(kMiB, model_.mem_limit_bytes / 8);
    std::vector<Handle> held;
    AllocOutcome last;
    for (int guard = 0; guard < 64; ++guard) {
      last = sim_alloc(chunk);
      if (!last.ok()) break;
      held.push_back(last.handle);
    }
    report.error_returned = !last.ok();
    report.detect_us = last.latency_us + jitter(model_.fault_detect_us);
    clock_.advance_us(report.detect_us - last.latency_us);
    for (Handle h : held) sim_free(h);
    double recover = jitter(model_.fault_recover_us);
    clock_.advance_us(recover);
    auto retry = sim_alloc(chunk);
    report.recovered = retry.ok();
    report.recover_us = recover + retry.latency_us;
    if (retry.ok()) sim_free(retry.handle);
    return report;
  }

  // Ask the limiter for a new SM limit. Software layers and MIG apply it at
  // their next monitoring tick; native has no limiter and ignores it.
  void request_sm_limit(double percent) {
    if (!(percent > 0 && percent <= 100)) throw RangeError("SM limit outside (0,100]");
    if (enforcement_of(model_.mode) == Enforcement::kNone) return;
    double spread = std::min(1.0, model_.jitter_fraction);
    double phase = 0.5 + 0.5 * spread * (2.0 * rng_.uniform() - 1.0);
    pending_limit_ = percent;
    pending_at_ns_ = clock_.now_ns() +
                     static_cast<std::uint64_t>(std::llround(model_.poll_interval_ms * 1e6 * phase));
  }

  double sm_limit_percent() const { return sm_limit_; }
  const TokenBucket& bucket() const { return bucket_; }

  std::uint64_t reserved_bytes() const { return reserved_bytes_; }
  std::uint64_t quota_used() const { return reserved_bytes_ + heap_.used_bytes(); }

  std::optional<int> owner_of(Handle h) const {
    auto it = owner_.find(h);
    if (it == owner_.end()) return std::nullopt;
    return it->second;
  }

  bool crashed() const { return crashed_; }

 private:
  static BackendModel validated(BackendModel m) {
    m.validate();
    return m;
  }

  AllocOutcome finish(AllocOutcome out, double latency) {
    out.latency_us = latency;
    clock_.advance_us(latency);
    return out;
  }

  void ensure_alive() const {
    if (crashed_) throw DeviceLostError("device context lost after an injected crash");
  }

  double rate_for(double percent) const { return percent / 100.0 * kTokensPerSecondAtFullGpu; }

  double bucket_max_for(double percent) const {
    return std::max(1.0, rate_for(percent) * model_.limiter_burst_ms / 1e3);
  }

  void apply_pending_limit() {
    if (!pending_limit_ || clock_.now_ns() < pending_at_ns_) return;
    // Tokens accrued under the old rate up to the switch point.
    bucket_ = token_bucket_refill(bucket_, std::max(bucket_.last_refill_ns, pending_at_ns_));
    sm_limit_ = *pending_limit_;
    bucket_.rate = rate_for(sm_limit_);
    bucket_.bucket_max = bucket_max_for(sm_limit_);
    bucket_.tokens = std::min(bucket_.tokens, bucket_.bucket_max);
    pending_limit_.reset();
  }

  // Blocks in virtual time until the bucket has granted `work` tokens. Work
  // larger than the bucket is admitted in bucket-sized installments.
  void admit_tokens(double work) {
    bucket_ = token_bucket_refill(bucket_, clock_.now_ns());
    while (work > 0) {
      double chunk = std::min(work, bucket_.bucket_max);
      std::uint64_t wait = token_wait_ns(bucket_, chunk);
      if (wait > 0) {
        clock_.advance_ns(wait);
        bucket_ = token_bucket_refill(bucket_, clock_.now_ns());
      }
      bucket_.tokens = std::max(0.0, bucket_.tokens - chunk);
      work -= chunk;
    }
  }

  BackendModel model_;
  SplitMix64 rng_;
  VirtualClock clock_;
  SimHeap heap_;
  TokenBucket bucket_;
  double sm_limit_ = 100;
  std::optional<double> pending_limit_;
  std::uint64_t pending_at_ns_ = 0;
  std::uint64_t busy_until_ns_ = 0;
  std::uint64_t reserved_bytes_ = 0;
  int tenants_ = 1;
  bool crashed_ = false;
  std::unordered_map<Handle, int> owner_;
};

}  // namespace virtbench::sim
