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

inline constexpr std::uint64_t kTransferBytes = 256 * kMiB;

// Achieved GB/s for one intercepted copy at `nominal_gbps`.
inline double timed_transfer(SimBackend& b, double nominal_gbps) {
  double us = b.jitter(static_cast<double>(kTransferBytes) / (nominal_gbps * 1e9) * 1e6);
  if (b.virtualized()) us += b.jitter(b.model().hook_ns) / 1e3;
  b.clock().advance_us(us);
  return static_cast<double>(kTransferBytes) / (us * 1e-6) / 1e9;
}

// PCIE-001
inline Measurement h2d_bandwidth(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(timed_transfer(b, b.model().pcie_h2d_gbps));
  return Measurement::of_samples(std::move(xs));
}

// PCIE-002
inline Measurement d2h_bandwidth(EvalContext& ctx) {
  auto b = ctx.backend();
  std::vector<double> xs;
  for (int i = 0; i < ctx.iterations(); ++i) xs.push_back(timed_transfer(b, b.model().pcie_d2h_gbps));
  return Measurement::of_samples(std::move(xs));
}

// PCIE-003
inline Measurement pcie_contention(EvalContext& ctx) {
  auto b = ctx.backend();
  double share = 1.0 / (1.0 + b.model().pcie_contention_alpha * (ctx.tenants() - 1));
  return Measurement::scalar((1.0 - share) * 100.0);
}

// PCIE-004
inline Measurement pinned_memory(EvalContext& ctx) {
  auto b = ctx.backend();
  double pageable = 0, pinned = 0;
  for (int i = 0; i < ctx.iterations(); ++i) {
    pageable += timed_transfer(b, b.model().pcie_h2d_gbps);
    pinned += timed_transfer(b, b.model().pcie_h2d_gbps * b.model().pinned_speedup);
  }
  return Measurement::scalar(pinned / pageable);
}

}  // namespace virtbench::eval
