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

#include <cmath>
#include <cstdint>
#include <string>

#include "virtbench/error.hpp"

namespace virtbench::sim {

// Monotone virtual time in integer nanoseconds. Simulated latencies advance
// it explicitly; nothing reads the wall clock.
class VirtualClock {
 public:
  std::uint64_t now_ns() const { return now_ns_; }
  double now_us() const { return static_cast<double>(now_ns_) / 1e3; }

  void advance_ns(std::uint64_t ns) { now_ns_ += ns; }

  // Rounds to the nearest nanosecond; negative durations are a logic error.
  void advance_us(double us) {
    if (!(us >= 0)) throw ClockError("negative or NaN clock advance");
    now_ns_ += static_cast<std::uint64_t>(std::llround(us * 1e3));
  }

  void advance_to(std::uint64_t t_ns) {
    if (t_ns < now_ns_)
      throw ClockError("clock regression from " + std::to_string(now_ns_) + " to " +
                       std::to_string(t_ns));
    now_ns_ = t_ns;
  }

 private:
  std::uint64_t now_ns_ = 0;
};

}  // namespace virtbench::sim
