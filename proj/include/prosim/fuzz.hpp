#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "prosim/settings.hpp"

namespace prosim {

/// Reproducible switch-frame source for safety fuzzing.
///
/// Built on std::mt19937_64 seeded with the user seed (its output sequence is
/// fixed by the C++ standard). Each draw `r` yields frame bits `r & 0x3f` held
/// for `1 + ((r >> 8) % 16)` ticks.
class FrameSource {
 public:
  explicit FrameSource(std::uint64_t seed);
  std::uint8_t next();

 private:
  std::mt19937_64 rng_;
  std::uint8_t frame_ = 0;
  int hold_ = 0;
};

struct FuzzReport {
  long long ticks = 0;
  std::uint64_t seed = 0;
  bool ok = true;
  std::optional<long long> first_violation_tick;
  std::string violation;
  /// Ticks spent in each (elbow, grip) state pair, indexed [elbow][grip].
  std::array<std::array<long long, 4>, 3> visits{};
};

/// Drives controller + plant with `ticks` pseudo-random raw frames (all six
/// inputs random) and checks the per-tick safety contract on every tick.
FuzzReport run_safety_fuzz(const SimSettings& settings, long long ticks, std::uint64_t seed);

}  // namespace prosim
