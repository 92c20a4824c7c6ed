#pragma once

#include <string>
#include <vector>

#include "prosim/scenario.hpp"
#include "prosim/trace.hpp"

namespace prosim {

struct AssertionResult {
  int line = 0;
  bool pass = false;
  std::string observed;  // "no sample" when the trace ends first
  std::string expected;
};

struct AssertionReport {
  std::vector<AssertionResult> results;
  bool pass = true;
};

/// Each assertion reads the first sample at or after its time. Ranges are
/// inclusive; enum assertions compare tokens.
AssertionReport evaluate_assertions(const Trace& trace, const Scenario& scenario);

std::string format_report(const AssertionReport& report);

}  // namespace prosim
