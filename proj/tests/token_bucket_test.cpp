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

#include <gtest/gtest.h>

#include "virtbench/calibration.hpp"
#include "virtbench/eval/isolation.hpp"
#include "virtbench/sim/backend.hpp"
#include "virtbench/sim/token_bucket.hpp"

namespace virtbench::sim {
namespace {

constexpr std::uint64_t kSecond = 1'000'000'000;

TEST(TokenBucket, Refill) {
  TokenBucket b{0, 100, 50, 0};
  EXPECT_DOUBLE_EQ(token_bucket_refill(b, kSecond).tokens, 50);
  b.tokens = 90;
  EXPECT_DOUBLE_EQ(token_bucket_refill(b, kSecond).tokens, 100);
  b.tokens = 10;
  EXPECT_DOUBLE_EQ(token_bucket_refill(b, 0).tokens, 10);
  b.last_refill_ns = 5;
  EXPECT_THROW(token_bucket_refill(b, 4), ClockError);
}

TEST(TokenBucket, WaitCoversDeficit) {
  TokenBucket b{10, 100, 50, 0};
  EXPECT_EQ(token_wait_ns(b, 10), 0u);
  auto wait = token_wait_ns(b, 60);
  EXPECT_EQ(wait, kSecond);
  EXPECT_GE(token_bucket_refill(b, wait).tokens, 60);
}

// Saturating consumer over 1000 s (10^6 ms) of virtual time: admitted work
// may exceed rate * T by at most the initial burst.
TEST(TokenBucket, RandomizedRateSweepNeverOveradmits) {
  SplitMix64 rng(8080);
  const std::uint64_t horizon = 1000 * kSecond;
  for (int trial = 0; trial < 40; ++trial) {
    double rate = rng.uniform(1e3, 1e6);
    double bucket_max = rate * rng.uniform(1e-3, 0.1);
    auto bucket = TokenBucket::full(bucket_max, rate);
    double admitted = 0;
    std::uint64_t now = 0;
    while (true) {
      double want = bucket_max * rng.uniform(0.25, 1.0);
      std::uint64_t t = now + token_wait_ns(bucket, want);
      if (t > horizon) break;
      now = t;
      bucket = token_bucket_refill(bucket, now);
      ASSERT_GE(bucket.tokens, want * (1 - 1e-12));
      bucket.tokens = std::max(0.0, bucket.tokens - want);
      admitted += want;
    }
    double budget = rate * static_cast<double>(horizon) / 1e9;
    EXPECT_LE(admitted, (budget + bucket_max) * 1.01) << "rate " << rate << " max " << bucket_max;
    EXPECT_LE(admitted - bucket_max, budget * 1.01);
    EXPECT_GE(admitted, budget * 0.99);  // a saturating consumer gets its share
  }
}

BackendModel limited_model(double limit, double bias) {
  auto m = default_calibration().profile(SystemMode::kHami);
  m.sm_limit_percent = limit;
  m.sm_util_bias = bias;
  m.rng_seed = 11;
  return m;
}

TEST(TokenBucket, BackendAdmitsAtConfiguredRate) {
  for (double limit : {10.0, 25.0, 50.0, 90.0}) {
    SimBackend b(limited_model(limit, 0));
    double admitted = 0;
    while (b.clock().now_ns() < 20 * kSecond) {
      b.submit_kernel(eval::kProbeKernelTokens);
      admitted += eval::kProbeKernelTokens;
    }
    double budget = limit / 100 * kTokensPerSecondAtFullGpu * b.clock().now_us() / 1e6;
    EXPECT_LE(admitted - b.bucket().bucket_max, budget * 1.01) << limit;
  }
}

TEST(TokenBucket, UtilizationAccuracyAtHalfLimit) {
  SimBackend b(limited_model(50, 0));
  auto probe = eval::probe_sm_utilization(b, 50);
  EXPECT_GE(probe.accuracy_percent, 99.0) << "achieved " << probe.achieved_percent;
}

TEST(TokenBucket, LimitChangeAppliesAtNextTick) {
  SimBackend b(limited_model(50, 0));
  b.request_sm_limit(25);
  EXPECT_EQ(b.submit_kernel(10).effective_limit_percent, 50);
  b.clock().advance_to(b.clock().now_ns() + 2 * static_cast<std::uint64_t>(b.model().poll_interval_ms * 1e6));
  EXPECT_EQ(b.submit_kernel(10).effective_limit_percent, 25);
  EXPECT_THROW(b.request_sm_limit(0), RangeError);
}

}  // namespace
}  // namespace virtbench::sim
