#include "prosim/assertions.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace prosim {

namespace {

double numeric_value(const TraceSample& s, TraceField f) {
  switch (f) {
    case TraceField::kTheta: return s.theta;
    case TraceField::kOmega: return s.omega;
    case TraceField::kAperture: return s.aperture;
    case TraceField::kGripCurrent: return s.grip_current;
    case TraceField::kAdcCode: return s.adc_code;
    case TraceField::kComparator: return s.comparator ? 1.0 : 0.0;
    case TraceField::kElbowState:
    case TraceField::kGripState: break;
  }
  return 0.0;
}

std::string observed_text(const TraceSample& s, TraceField f) {
  switch (f) {
    case TraceField::kElbowState: return std::string(to_token(s.elbow_fsm));
    case TraceField::kGripState: return std::string(to_token(s.grip_fsm));
    case TraceField::kAdcCode: return fmt::format("{}", s.adc_code);
    case TraceField::kComparator: return s.comparator ? "1" : "0";
    default: return fmt::format("{:.6f}", numeric_value(s, f));
  }
}

}  // namespace

AssertionReport evaluate_assertions(const Trace& trace, const Scenario& scenario) {
  AssertionReport report;
  const long long stride = std::max(1, trace.stride);
  for (const auto& a : scenario.assertions) {
    AssertionResult r;
    r.line = a.line;
    r.expected = a.token ? fmt::format("{} = {}", to_token(a.field), *a.token)
                         : fmt::format("{} in [{}, {}]", to_token(a.field), a.min, a.max);

    const long long tick = first_tick_at_or_after(a.time, trace.dt);
    const long long index = (tick + stride - 1) / stride;
    if (index >= static_cast<long long>(trace.samples.size())) {
      r.observed = "no sample";
      r.pass = false;
    } else {
      const TraceSample& s = trace.samples[static_cast<std::size_t>(index)];
      r.observed = observed_text(s, a.field);
      if (a.token) {
        r.pass = r.observed == *a.token;
      } else {
        const double v = numeric_value(s, a.field);
        r.pass = a.min <= v && v <= a.max;
      }
    }
    report.pass = report.pass && r.pass;
    report.results.push_back(std::move(r));
  }
  return report;
}

std::string format_report(const AssertionReport& report) {
  std::string out;
  for (const auto& r : report.results) {
    out += fmt::format("line {}: {} expected {}, observed {}\n", r.line, r.pass ? "PASS" : "FAIL",
                       r.expected, r.observed);
  }
  const auto passed = std::count_if(report.results.begin(), report.results.end(),
                                    [](const AssertionResult& r) { return r.pass; });
  out += fmt::format("{}: {}/{} assertions passed\n", report.pass ? "PASS" : "FAIL", passed,
                     report.results.size());
  return out;
}

}  // namespace prosim
