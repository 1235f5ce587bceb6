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
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "virtbench/error.hpp"

namespace virtbench::sim {

struct Block {
  std::uint64_t offset = 0;
  std::uint64_t length = 0;
  friend bool operator==(const Block&, const Block&) = default;
};

using Handle = std::uint64_t;

struct HeapAllocation {
  Handle handle = 0;
  std::uint64_t offset = 0;
  std::size_t blocks_scanned = 0;  // free blocks visited by the first-fit search
};

// First-fit free-list allocator over a flat address range. Free blocks are
// kept sorted by offset and coalesced on every free, so the list never holds
// two adjacent blocks.
class SimHeap {
 public:
  explicit SimHeap(std::uint64_t capacity_bytes) : capacity_(capacity_bytes) {
    if (capacity_bytes == 0) throw PreconditionError("heap capacity must be positive");
    free_.emplace(0, capacity_bytes);
  }

  // nullopt when no free block is large enough.
  std::optional<HeapAllocation> allocate(std::uint64_t bytes) {
    if (bytes == 0) throw PreconditionError("allocation size must be positive");
    std::size_t scanned = 0;
    for (auto it = free_.begin(); it != free_.end(); ++it) {
      ++scanned;
      if (it->second < bytes) continue;
      std::uint64_t offset = it->first;
      std::uint64_t rest = it->second - bytes;
      free_.erase(it);
      if (rest > 0) free_.emplace(offset + bytes, rest);
      Handle h = next_handle_++;
      live_.emplace(h, Block{offset, bytes});
      used_ += bytes;
      return HeapAllocation{h, offset, scanned};
    }
    last_failed_scan_ = scanned;
    return std::nullopt;
  }

  // Returns the freed block's length.
  std::uint64_t release(Handle h) {
    auto found = live_.find(h);
    if (found == live_.end())
      throw InvalidFreeError("free of unknown or already freed handle " + std::to_string(h));
    Block b = found->second;
    live_.erase(found);
    used_ -= b.length;
    insert_free(b);
    return b.length;
  }

  // Sliding compaction: each movable allocation, in address order, moves to
  // the lowest free range that fits. Pinned allocations stay put. Returns the
  // largest free block afterwards.
  template <typename IsPinned>
  std::uint64_t compact(IsPinned&& is_pinned) {
    std::vector<std::pair<std::uint64_t, Handle>> order;
    order.reserve(live_.size());
    for (const auto& [h, b] : live_) order.emplace_back(b.offset, h);
    std::sort(order.begin(), order.end());
    for (const auto& [offset, h] : order) {
      if (is_pinned(h)) continue;
      Block b = live_.at(h);
      insert_free(b);
      auto it = free_.begin();
      while (it->second < b.length) ++it;  // the block's own range always fits
      std::uint64_t off = it->first, rest = it->second - b.length;
      free_.erase(it);
      if (rest > 0) free_.emplace(off + b.length, rest);
      live_[h] = Block{off, b.length};
    }
    return largest_free_block();
  }

  std::uint64_t capacity() const { return capacity_; }
  std::uint64_t used_bytes() const { return used_; }
  std::size_t live_count() const { return live_.size(); }

  std::uint64_t total_free() const {
    std::uint64_t total = 0;
    for (const auto& [off, len] : free_) total += len;
    return total;
  }

  std::uint64_t largest_free_block() const {
    std::uint64_t best = 0;
    for (const auto& [off, len] : free_) best = std::max(best, len);
    return best;
  }

  std::size_t free_block_count() const { return free_.size(); }
  std::size_t last_failed_scan() const { return last_failed_scan_; }

  std::vector<Block> free_blocks() const {
    std::vector<Block> out;
    out.reserve(free_.size());
    for (const auto& [off, len] : free_) out.push_back({off, len});
    return out;
  }

  std::optional<Block> block_of(Handle h) const {
    auto it = live_.find(h);
    if (it == live_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Handle> handles() const {
    std::vector<Handle> out;
    out.reserve(live_.size());
    for (const auto& [h, b] : live_) out.push_back(h);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void insert_free(Block b) {
    auto next = free_.lower_bound(b.offset);
    if (next != free_.end() && b.offset + b.length == next->first) {
      b.length += next->second;
      next = free_.erase(next);
    }
    if (next != free_.begin()) {
      auto prev = std::prev(next);
      if (prev->first + prev->second == b.offset) {
        prev->second += b.length;
        return;
      }
    }
    free_.emplace(b.offset, b.length);
  }

  std::uint64_t capacity_;
  std::uint64_t used_ = 0;
  std::map<std::uint64_t, std::uint64_t> free_;  // offset -> length
  std::unordered_map<Handle, Block> live_;
  Handle next_handle_ = 1;
  std::size_t last_failed_scan_ = 0;
};

// 1 - largest_free_block / total_free_memory
inline double fragmentation_index(const SimHeap& heap) {
  std::uint64_t total = heap.total_free();
  if (total == 0) throw DegenerateInputError("fragmentation index of a full heap is undefined");
  return 1.0 - static_cast<double>(heap.largest_free_block()) / static_cast<double>(total);
}

}  // namespace virtbench::sim
