#include "prosim/controller.hpp"

#include <fmt/format.h>

#include "prosim/error.hpp"

namespace prosim {

namespace {

std::array<bool, SwitchFrame::kInputCount> as_array(const SwitchFrame& f) {
  return {f.elbow_up_cmd,       f.elbow_down_cmd,       f.grip_cmd,
          f.elbow_max_up_limit, f.elbow_max_down_limit, f.overcurrent_comparator};
}

SwitchFrame from_array(const std::array<bool, SwitchFrame::kInputCount>& a) {
  return SwitchFrame{a[0], a[1], a[2], a[3], a[4], a[5]};
}

ElbowCommand elbow_rule(const SwitchFrame& in, ElbowState& fsm) {
  if (in.elbow_up_cmd && !in.elbow_down_cmd && !in.elbow_max_up_limit) {
    fsm = ElbowState::kMovingUp;
    return ElbowCommand::kUp;
  }
  if (in.elbow_down_cmd && !in.elbow_up_cmd && !in.elbow_max_down_limit) {
    fsm = ElbowState::kMovingDown;
    return ElbowCommand::kDown;
  }
  fsm = ElbowState::kIdle;
  return ElbowCommand::kOff;
}

}  // namespace

SwitchFrame SwitchFrame::from_bits(std::uint8_t mask) {
  std::array<bool, kInputCount> a{};
  for (std::size_t i = 0; i < kInputCount; ++i) {
    a[i] = (mask >> i) & 1u;
  }
  return from_array(a);
}

std::uint8_t SwitchFrame::to_bits() const {
  const auto a = as_array(*this);
  std::uint8_t mask = 0;
  for (std::size_t i = 0; i < kInputCount; ++i) {
    mask |= static_cast<std::uint8_t>(a[i]) << i;
  }
  return mask;
}

void ControllerConfig::validate() const {
  if (debounce_ticks < 1) {
    throw ValidationError(fmt::format("debounce_ticks must be >= 1 (got {})", debounce_ticks));
  }
  if (open_timeout_ticks < 1) {
    throw ValidationError(
        fmt::format("open_timeout_ticks must be >= 1 (got {})", open_timeout_ticks));
  }
}

std::string_view to_token(ElbowState s) {
  switch (s) {
    case ElbowState::kIdle: return "IDLE";
    case ElbowState::kMovingUp: return "MOVING_UP";
    case ElbowState::kMovingDown: return "MOVING_DOWN";
  }
  return "?";
}

std::string_view to_token(GripState s) {
  switch (s) {
    case GripState::kOpen: return "OPEN";
    case GripState::kClosing: return "CLOSING";
    case GripState::kHolding: return "HOLDING";
    case GripState::kOpening: return "OPENING";
  }
  return "?";
}

std::string_view to_token(ElbowCommand c) {
  switch (c) {
    case ElbowCommand::kOff: return "OFF";
    case ElbowCommand::kUp: return "UP";
    case ElbowCommand::kDown: return "DOWN";
  }
  return "?";
}

std::string_view to_token(GripCommand c) {
  switch (c) {
    case GripCommand::kOff: return "OFF";
    case GripCommand::kClose: return "CLOSE";
    case GripCommand::kOpen: return "OPEN";
  }
  return "?";
}

DebouncerState make_debouncer(int window) {
  DebouncerState d;
  d.window = window;
  return d;
}

SwitchFrame debounce_step(DebouncerState& state, const SwitchFrame& raw) {
  // The output is registered: this tick reports the level settled by the
  // samples up to the previous tick.
  const SwitchFrame out = from_array(state.stable);
  const auto in = as_array(raw);
  for (std::size_t i = 0; i < SwitchFrame::kInputCount; ++i) {
    if (in[i] == state.stable[i]) {
      state.counter[i] = 0;
      continue;
    }
    if (++state.counter[i] >= state.window) {
      state.stable[i] = in[i];
      state.counter[i] = 0;
    }
  }
  return out;
}

bool grip_trigger(bool& edge_memory, bool stable_grip_cmd) {
  const bool rising = stable_grip_cmd && !edge_memory;
  edge_memory = stable_grip_cmd;
  return rising;
}

ControllerState reset_controller(const ControllerConfig& config) {
  config.validate();
  ControllerState s;
  s.debouncer = make_debouncer(config.debounce_ticks);
  s.open_timeout_ticks = config.open_timeout_ticks;
  return s;
}

ControllerOutputs controller_step(ControllerState& state, const SwitchFrame& stable) {
  ControllerOutputs out;
  out.elbow_cmd = elbow_rule(stable, state.elbow_fsm);

  // Trigger first, then the comparator and timer rules on the resulting state.
  const bool triggered = grip_trigger(state.grip_edge_memory, stable.grip_cmd);
  bool entered_opening = false;
  if (triggered) {
    switch (state.grip_fsm) {
      case GripState::kOpen:
      case GripState::kOpening:
        state.grip_fsm = GripState::kClosing;
        state.opening_timer = 0;
        break;
      case GripState::kClosing:
      case GripState::kHolding:
        state.grip_fsm = GripState::kOpening;
        state.opening_timer = state.open_timeout_ticks;
        entered_opening = true;
        break;
    }
  }

  switch (state.grip_fsm) {
    case GripState::kClosing:
      if (stable.overcurrent_comparator) {
        state.grip_fsm = GripState::kHolding;
      }
      break;
    case GripState::kOpening:
      if (!entered_opening && state.opening_timer > 0) {
        --state.opening_timer;
      }
      if (stable.overcurrent_comparator || state.opening_timer == 0) {
        state.grip_fsm = GripState::kOpen;
        state.opening_timer = 0;
      }
      break;
    case GripState::kOpen:
    case GripState::kHolding:
      break;
  }

  switch (state.grip_fsm) {
    case GripState::kClosing: out.grip_cmd_out = GripCommand::kClose; break;
    case GripState::kOpening: out.grip_cmd_out = GripCommand::kOpen; break;
    case GripState::kOpen:
    case GripState::kHolding: out.grip_cmd_out = GripCommand::kOff; break;
  }
  return out;
}

TickResult controller_tick(ControllerState& state, const SwitchFrame& raw) {
  TickResult r;
  r.stable = debounce_step(state.debouncer, raw);
  const bool before = state.grip_edge_memory;
  r.outputs = controller_step(state, r.stable);
  r.grip_triggered = r.stable.grip_cmd && !before;
  return r;
}

PinLevels map_outputs_to_pins(const ControllerOutputs& out) {
  PinLevels p;
  switch (out.elbow_cmd) {
    case ElbowCommand::kUp: p.elbow_pin_a = true; break;
    case ElbowCommand::kDown: p.elbow_pin_b = true; break;
    case ElbowCommand::kOff: break;
  }
  switch (out.grip_cmd_out) {
    case GripCommand::kClose: p.grip_drive_pin = true; break;
    case GripCommand::kOpen:
      p.grip_drive_pin = true;
      p.grip_dir_flag = true;
      break;
    case GripCommand::kOff: break;
  }
  return p;
}

}  // namespace prosim
