#include "prosim/fuzz.hpp"

#include "prosim/sim_engine.hpp"

namespace prosim {

FrameSource::FrameSource(std::uint64_t seed) : rng_(seed) {}

std::uint8_t FrameSource::next() {
  if (hold_ == 0) {
    const std::uint64_t r = rng_();
    frame_ = static_cast<std::uint8_t>(r & 0x3f);
    hold_ = 1 + static_cast<int>((r >> 8) % 16);
  }
  --hold_;
  return frame_;
}

FuzzReport run_safety_fuzz(const SimSettings& settings, long long ticks, std::uint64_t seed) {
  FuzzReport report;
  report.ticks = ticks;
  report.seed = seed;

  CoSimulation sim(settings);
  FrameSource frames(seed);
  TickContext before;
  for (long long n = 0; n < ticks; ++n) {
    const TraceSample s = sim.step(SwitchFrame::from_bits(frames.next()));
    ++report.visits[static_cast<std::size_t>(s.elbow_fsm)][static_cast<std::size_t>(s.grip_fsm)];
    if (auto v = check_tick_safety(before, s, sim.params())) {
      report.ok = false;
      report.first_violation_tick = n;
      report.violation = *v;
      return report;
    }
    before = TickContext::after(s);
  }
  return report;
}

}  // namespace prosim
