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

#include "virtbench/eval/context.hpp"
#include "virtbench/stats.hpp"

namespace virtbench::eval {

inline constexpr double kTypicalOverlap = 0.5;

// Mean memory access time in units of an L2 hit.
inline double access_time(const SimBackend& b, int tenants, double overlap) {
  double hit = b.cache_hit_rate(tenants, overlap);
  return hit + (1.0 - hit) * b.model().l2_miss_penalty;
}

// CACHE-001
inline Measurement l2_hit_rate(EvalContext& ctx) {
  auto b = ctx.backend();
  return Measurement::scalar(b.cache_hit_rate(ctx.tenants(), kTypicalOverlap) * 100.0);
}

// CACHE-002: hits lost to other tenants' evictions, in points.
inline Measurement eviction_rate(EvalContext& ctx) {
  auto b = ctx.backend();
  return Measurement::scalar(
      (b.cache_hit_rate(1, kTypicalOverlap) - b.cache_hit_rate(ctx.tenants(), kTypicalOverlap)) * 100.0);
}

// CACHE-003: fully colliding versus disjoint working sets.
inline Measurement working_set_collision(EvalContext& ctx) {
  auto b = ctx.backend();
  double disjoint = 1.0 / access_time(b, ctx.tenants(), 0.0);
  double colliding = 1.0 / access_time(b, ctx.tenants(), 1.0);
  return Measurement::scalar(degradation_percent(disjoint, colliding));
}

// CACHE-004
inline Measurement cache_contention(EvalContext& ctx) {
  auto b = ctx.backend();
  double solo = access_time(b, 1, kTypicalOverlap);
  double shared = access_time(b, ctx.tenants(), kTypicalOverlap);
  return Measurement::scalar((shared - solo) / solo * 100.0);
}

}  // namespace virtbench::eval
