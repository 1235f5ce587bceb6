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
#include <cstdint>

#include "virtbench/error.hpp"

namespace virtbench::sim {

// tokens = min(bucket_max, tokens + rate * dt)
struct TokenBucket {
  double tokens = 0;
  double bucket_max = 1;
  double rate = 1;  // tokens per virtual second
  std::uint64_t last_refill_ns = 0;

  static TokenBucket full(double bucket_max, double rate, std::uint64_t now_ns = 0) {
    return TokenBucket{bucket_max, bucket_max, rate, now_ns};
  }
};

inline TokenBucket token_bucket_refill(TokenBucket bucket, std::uint64_t now_ns) {
  if (now_ns < bucket.last_refill_ns) throw ClockError("token bucket refill at an earlier time");
  double dt_s = static_cast<double>(now_ns - bucket.last_refill_ns) / 1e9;
  bucket.tokens = std::min(bucket.bucket_max, bucket.tokens + bucket.rate * dt_s);
  bucket.last_refill_ns = now_ns;
  return bucket;
}

// Virtual nanoseconds until the bucket holds `amount` tokens, assuming it was
// refilled at last_refill_ns. Zero when enough tokens are already there.
inline std::uint64_t token_wait_ns(const TokenBucket& bucket, double amount) {
  if (bucket.tokens >= amount) return 0;
  double deficit = amount - bucket.tokens;
  double ns = deficit / bucket.rate * 1e9;
  auto whole = static_cast<std::uint64_t>(ns);
  return static_cast<double>(whole) < ns ? whole + 1 : whole;
}

}  // namespace virtbench::sim
