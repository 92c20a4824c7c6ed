#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "prosim/controller.hpp"

namespace prosim {

/// Signals crossing the controller/plant boundary on one tick.
struct TraceSample {
  double time = 0.0;
  SwitchFrame raw;
  SwitchFrame stable;
  ElbowState elbow_fsm = ElbowState::kIdle;
  GripState grip_fsm = GripState::kOpen;
  ElbowCommand elbow_cmd = ElbowCommand::kOff;
  GripCommand grip_cmd_out = GripCommand::kOff;
  double theta = 0.0;
  double omega = 0.0;
  double aperture = 0.0;
  double grip_current = 0.0;
  int adc_code = 0;
  bool comparator = false;

  bool operator==(const TraceSample&) const = default;
};

struct Trace {
  double dt = 0.001;
  /// Every `stride`-th tick is recorded.
  int stride = 1;
  std::vector<TraceSample> samples;
};

/// Column names in serialisation order.
const std::vector<std::string>& trace_columns();

/// CSV with a header row. Floats use six fixed decimals, booleans 0/1, enums
/// their uppercase tokens, LF line endings. A stride above one is recorded in
/// a leading `# stride=N dt=...` comment line.
std::string serialize_trace(const Trace& trace);

/// Reads the CSV produced by serialize_trace. Throws ValidationError on any
/// malformed row.
Trace parse_trace_csv(std::string_view csv);

}  // namespace prosim
