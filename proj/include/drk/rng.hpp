#pragma once

#include <cstdint>
#include <string_view>

namespace drk {

// Deterministic, platform-independent random streams. A stream is identified by
// (seed, tag); independently tagged streams never share state, so enabling or
// disabling one consumer does not perturb the draws seen by another.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view tag);

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double gaussian();

  /// Unbiased uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Child stream keyed by two indices (e.g. iteration, worker id).
  RngStream derive(std::uint64_t a, std::uint64_t b = 0) const;

 private:
  RngStream() = default;
  void seed_state(std::uint64_t material);

  std::uint64_t base_ = 0;      // seeding material, kept for derive()
  std::uint64_t state_[4] = {};
};

}  // namespace drk
