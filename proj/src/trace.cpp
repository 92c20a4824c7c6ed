#include "prosim/trace.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

#include <fmt/format.h>

#include "prosim/error.hpp"
#include "prosim/settings.hpp"

namespace prosim {

namespace {

constexpr std::array<std::string_view, 6> kInputNames{
    "elbow_up_cmd",       "elbow_down_cmd",       "grip_cmd",
    "elbow_max_up_limit", "elbow_max_down_limit", "overcurrent_comparator"};

void append_fixed(std::string& out, double v) {
  auto s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") {
    s.erase(0, 1);
  }
  out += s;
}

void append_frame(std::string& out, const SwitchFrame& f) {
  const std::uint8_t bits = f.to_bits();
  for (std::size_t i = 0; i < SwitchFrame::kInputCount; ++i) {
    out += ((bits >> i) & 1u) ? "1," : "0,";
  }
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  while (true) {
    const auto comma = line.find(',');
    cells.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) {
      return cells;
    }
    line.remove_prefix(comma + 1);
  }
}

template <typename Enum, std::size_t N>
Enum enum_from(std::string_view cell, const std::array<Enum, N>& values, int row) {
  for (Enum v : values) {
    if (to_token(v) == cell) {
      return v;
    }
  }
  throw ValidationError(fmt::format("row {}: unknown token '{}'", row, cell));
}

}  // namespace

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c{"time"};
    for (auto n : kInputNames) {
      c.push_back(fmt::format("raw_{}", n));
    }
    for (auto n : kInputNames) {
      c.push_back(fmt::format("stable_{}", n));
    }
    for (const char* n : {"elbow_fsm", "grip_fsm", "elbow_cmd", "grip_cmd_out", "theta", "omega",
                          "aperture", "grip_current", "adc_code", "comparator"}) {
      c.push_back(n);
    }
    return c;
  }();
  return cols;
}

std::string serialize_trace(const Trace& trace) {
  std::string out;
  out.reserve(160 * (trace.samples.size() + 1));
  if (trace.stride > 1) {
    out += fmt::format("# stride={} dt={}\n", trace.stride, trace.dt);
  }
  const auto& cols = trace_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out += cols[i];
    out += i + 1 < cols.size() ? ',' : '\n';
  }
  for (const auto& s : trace.samples) {
    append_fixed(out, s.time);
    out += ',';
    append_frame(out, s.raw);
    append_frame(out, s.stable);
    out += to_token(s.elbow_fsm);
    out += ',';
    out += to_token(s.grip_fsm);
    out += ',';
    out += to_token(s.elbow_cmd);
    out += ',';
    out += to_token(s.grip_cmd_out);
    out += ',';
    for (double v : {s.theta, s.omega, s.aperture, s.grip_current}) {
      append_fixed(out, v);
      out += ',';
    }
    out += fmt::format("{},{}\n", s.adc_code, s.comparator ? 1 : 0);
  }
  return out;
}

Trace parse_trace_csv(std::string_view csv) {
  Trace trace;
  bool header_seen = false;
  bool dt_from_comment = false;
  int row = 0;
  const std::size_t ncols = trace_columns().size();
  while (!csv.empty()) {
    ++row;
    const auto nl = csv.find('\n');
    const auto line = csv.substr(0, nl);
    csv = nl == std::string_view::npos ? std::string_view{} : csv.substr(nl + 1);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '#') {
      int stride = 1;
      double dt = 0.0;
      if (std::sscanf(std::string(line).c_str(), "# stride=%d dt=%lf", &stride, &dt) == 2) {
        trace.stride = stride;
        trace.dt = dt;
        dt_from_comment = true;
      }
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != ncols) {
      throw ValidationError(
          fmt::format("row {}: expected {} columns, got {}", row, ncols, cells.size()));
    }
    if (!header_seen) {
      for (std::size_t i = 0; i < ncols; ++i) {
        if (cells[i] != trace_columns()[i]) {
          throw ValidationError(fmt::format("row {}: unexpected header '{}'", row, cells[i]));
        }
      }
      header_seen = true;
      continue;
    }
    auto num = [&](std::size_t i) {
      double v = 0.0;
      if (!parse_number(cells[i], v)) {
        throw ValidationError(fmt::format("row {}: malformed number '{}'", row, cells[i]));
      }
      return v;
    };
    auto bit = [&](std::size_t i) {
      if (cells[i] != "0" && cells[i] != "1") {
        throw ValidationError(fmt::format("row {}: malformed flag '{}'", row, cells[i]));
      }
      return cells[i] == "1";
    };
    TraceSample s;
    s.time = num(0);
    std::uint8_t raw = 0;
    std::uint8_t stable = 0;
    for (std::size_t i = 0; i < SwitchFrame::kInputCount; ++i) {
      raw |= static_cast<std::uint8_t>(bit(1 + i)) << i;
      stable |= static_cast<std::uint8_t>(bit(7 + i)) << i;
    }
    s.raw = SwitchFrame::from_bits(raw);
    s.stable = SwitchFrame::from_bits(stable);
    s.elbow_fsm = enum_from(cells[13], std::array{ElbowState::kIdle, ElbowState::kMovingUp,
                                                  ElbowState::kMovingDown}, row);
    s.grip_fsm = enum_from(cells[14], std::array{GripState::kOpen, GripState::kClosing,
                                                 GripState::kHolding, GripState::kOpening}, row);
    s.elbow_cmd = enum_from(
        cells[15], std::array{ElbowCommand::kOff, ElbowCommand::kUp, ElbowCommand::kDown}, row);
    s.grip_cmd_out = enum_from(
        cells[16], std::array{GripCommand::kOff, GripCommand::kClose, GripCommand::kOpen}, row);
    s.theta = num(17);
    s.omega = num(18);
    s.aperture = num(19);
    s.grip_current = num(20);
    long long code = 0;
    if (!parse_integer(cells[21], code)) {
      throw ValidationError(fmt::format("row {}: malformed code '{}'", row, cells[21]));
    }
    s.adc_code = static_cast<int>(code);
    s.comparator = bit(22);
    trace.samples.push_back(s);
  }
  if (!header_seen) {
    throw ValidationError("missing header row");
  }
  if (!dt_from_comment && trace.samples.size() >= 2) {
    trace.dt = trace.samples[1].time - trace.samples[0].time;
  }
  return trace;
}

}  // namespace prosim
