// Copyright 2026 The central-depth Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace cdepth {

// Philox4x32-10 keyed by the master seed; the stream id occupies the upper
// half of the 128-bit counter. Copying a stream replays its draws.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : seed_(master_seed), stream_(stream_id) {}

  std::uint64_t master_seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  // Child stream with the same master seed and a hashed stream id.
  RngStream derive(std::uint64_t child) const;

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1).
  double uniform_open();
  double normal();
  // Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cdepth
