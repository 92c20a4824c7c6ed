#include "prosim/trace.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "prosim/error.hpp"

namespace prosim {
namespace {

const char* kHeader =
    "time,raw_elbow_up_cmd,raw_elbow_down_cmd,raw_grip_cmd,raw_elbow_max_up_limit,"
    "raw_elbow_max_down_limit,raw_overcurrent_comparator,stable_elbow_up_cmd,"
    "stable_elbow_down_cmd,stable_grip_cmd,stable_elbow_max_up_limit,"
    "stable_elbow_max_down_limit,stable_overcurrent_comparator,elbow_fsm,grip_fsm,elbow_cmd,"
    "grip_cmd_out,theta,omega,aperture,grip_current,adc_code,comparator\n";

TraceSample idle_sample() {
  TraceSample s;
  s.aperture = 0.10;
  return s;
}

std::size_t count_columns(const std::string& line) {
  std::size_t n = 1;
  for (char c : line) {
    n += c == ',';
  }
  return n;
}

TEST(TraceCsvTest, EmptyTraceIsHeaderOnly) {
  EXPECT_EQ(serialize_trace(Trace{}), kHeader);
  EXPECT_EQ(trace_columns().size(), 23u);
}

TEST(TraceCsvTest, IdleSampleLine) {
  Trace t;
  t.samples.push_back(idle_sample());
  EXPECT_EQ(serialize_trace(t),
            std::string(kHeader) +
                "0.000000,0,0,0,0,0,0,0,0,0,0,0,0,IDLE,OPEN,OFF,OFF,"
                "0.000000,0.000000,0.100000,0.000000,0,0\n");
}

TEST(TraceCsvTest, RenderingRules) {
  TraceSample s;
  s.time = 1.25;
  s.raw = SwitchFrame::from_bits(0x05);
  s.stable = SwitchFrame::from_bits(0x20);
  s.elbow_fsm = ElbowState::kMovingDown;
  s.grip_fsm = GripState::kHolding;
  s.elbow_cmd = ElbowCommand::kDown;
  s.grip_cmd_out = GripCommand::kClose;
  s.theta = -1e-9;  // renders as zero, without a sign
  s.omega = -0.1234567;
  s.aperture = 0.0399254;
  s.grip_current = 0.0856;
  s.adc_code = 44;
  s.comparator = true;
  Trace t;
  t.samples.push_back(s);
  EXPECT_EQ(serialize_trace(t),
            std::string(kHeader) +
                "1.250000,1,0,1,0,0,0,0,0,0,0,0,1,MOVING_DOWN,HOLDING,DOWN,CLOSE,"
                "0.000000,-0.123457,0.039925,0.085600,44,1\n");
}

TEST(TraceCsvTest, StrideRecordedInCommentLine) {
  Trace t;
  t.dt = 0.0005;
  t.stride = 4;
  t.samples.push_back(idle_sample());
  const std::string csv = serialize_trace(t);
  EXPECT_EQ(csv.rfind("# stride=4 dt=0.0005\n", 0), 0u) << csv;
  const Trace back = parse_trace_csv(csv);
  EXPECT_EQ(back.stride, 4);
  EXPECT_EQ(back.dt, 0.0005);
}

Trace random_trace(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  Trace t;
  for (int i = 0; i < n; ++i) {
    TraceSample s;
    s.time = i * 0.001;
    s.raw = SwitchFrame::from_bits(static_cast<std::uint8_t>(rng() & 0x3f));
    s.stable = SwitchFrame::from_bits(static_cast<std::uint8_t>(rng() & 0x3f));
    s.elbow_fsm = static_cast<ElbowState>(rng() % 3);
    s.grip_fsm = static_cast<GripState>(rng() % 4);
    s.elbow_cmd = static_cast<ElbowCommand>(rng() % 3);
    s.grip_cmd_out = static_cast<GripCommand>(rng() % 3);
    s.theta = u(rng);
    s.omega = u(rng);
    s.aperture = std::abs(u(rng)) / 30.0;
    s.grip_current = std::abs(u(rng)) / 6.0;
    s.adc_code = static_cast<int>(rng() % 256);
    s.comparator = rng() & 1;
    t.samples.push_back(s);
  }
  return t;
}

TEST(TraceCsvTest, EveryRowHasEveryColumn) {
  const std::string csv = serialize_trace(random_trace(3, 500));
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(count_columns(line), 23u) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 501);
}

TEST(TraceCsvTest, ParseRoundTripWithinPrintedPrecision) {
  const Trace t = random_trace(5, 300);
  const Trace back = parse_trace_csv(serialize_trace(t));
  ASSERT_EQ(back.samples.size(), t.samples.size());
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const TraceSample& a = t.samples[i];
    const TraceSample& b = back.samples[i];
    EXPECT_NEAR(a.time, b.time, 1e-6);
    EXPECT_NEAR(a.theta, b.theta, 1e-6);
    EXPECT_NEAR(a.omega, b.omega, 1e-6);
    EXPECT_NEAR(a.aperture, b.aperture, 1e-6);
    EXPECT_NEAR(a.grip_current, b.grip_current, 1e-6);
    EXPECT_EQ(a.raw, b.raw);
    EXPECT_EQ(a.stable, b.stable);
    EXPECT_EQ(a.elbow_fsm, b.elbow_fsm);
    EXPECT_EQ(a.grip_fsm, b.grip_fsm);
    EXPECT_EQ(a.elbow_cmd, b.elbow_cmd);
    EXPECT_EQ(a.grip_cmd_out, b.grip_cmd_out);
    EXPECT_EQ(a.adc_code, b.adc_code);
    EXPECT_EQ(a.comparator, b.comparator);
  }
  // Re-serialising the parsed trace is a fixed point.
  EXPECT_EQ(serialize_trace(back), serialize_trace(parse_trace_csv(serialize_trace(back))));
}

TEST(TraceCsvTest, MalformedRowsRejected) {
  const std::string good = serialize_trace(random_trace(9, 1));
  EXPECT_NO_THROW(parse_trace_csv(good));
  EXPECT_THROW(parse_trace_csv("time\n"), ValidationError);
  EXPECT_THROW(parse_trace_csv(std::string(kHeader) + "0.0,1,2\n"), ValidationError);
  std::string bad_enum = good;
  bad_enum.replace(bad_enum.find(",", bad_enum.find('\n') + 1), 1, ",x");
  EXPECT_THROW(parse_trace_csv(bad_enum), ValidationError);
}

}  // namespace
}  // namespace prosim
