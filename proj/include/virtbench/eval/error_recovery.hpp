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
#include "virtbench/scoring.hpp"

namespace virtbench::eval {

inline std::vector<sim::FaultReport> kernel_faults(EvalContext& ctx) {
  std::vector<sim::FaultReport> reports;
  auto b = ctx.backend();
  for (int i = 0; i < ctx.iterations(); ++i) {
    // A crashed device stays lost; each fault then needs a fresh one.
    if (b.crashed()) b = ctx.backend();
    reports.push_back(b.inject_fault(sim::FaultKind::kKernelError));
  }
  return reports;
}

// ERR-001
inline Measurement error_detection(EvalContext& ctx) {
  std::vector<double> xs;
  for (const auto& r : kernel_faults(ctx)) xs.push_back(r.detect_us);
  return Measurement::of_samples(std::move(xs));
}

// ERR-002
inline Measurement error_recovery(EvalContext& ctx) {
  std::vector<double> xs;
  for (const auto& r : kernel_faults(ctx)) xs.push_back(r.recover_us);
  return Measurement::of_samples(std::move(xs));
}

// ERR-003: exhaust the memory quota and see how the system copes.
inline Measurement graceful_degradation(EvalContext& ctx) {
  auto b = ctx.backend();
  auto r = b.inject_fault(sim::FaultKind::kOomExhaustion);
  auto m = Measurement::scalar(graceful_degradation_score(r.no_crash, r.error_returned, r.recovered));
  m.auxiliary["no_crash"] = r.no_crash;
  m.auxiliary["error_returned"] = r.error_returned;
  m.auxiliary["recovered"] = r.recovered;
  return m;
}

}  // namespace virtbench::eval
