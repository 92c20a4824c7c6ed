#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace prosim {

/// The six logical controller inputs. Order matches the input port bits.
struct SwitchFrame {
  bool elbow_up_cmd = false;
  bool elbow_down_cmd = false;
  bool grip_cmd = false;
  bool elbow_max_up_limit = false;
  bool elbow_max_down_limit = false;
  bool overcurrent_comparator = false;

  static constexpr std::size_t kInputCount = 6;

  /// Bit i of the mask is input i in declaration order.
  static SwitchFrame from_bits(std::uint8_t mask);
  std::uint8_t to_bits() const;

  bool operator==(const SwitchFrame&) const = default;
};

struct ControllerConfig {
  int debounce_ticks = 5;
  int open_timeout_ticks = 3000;

  void validate() const;
};

struct DebouncerState {
  /// Level settled by the samples seen so far; reported on the next tick.
  std::array<bool, SwitchFrame::kInputCount> stable{};
  std::array<int, SwitchFrame::kInputCount> counter{};
  int window = 5;

  bool operator==(const DebouncerState&) const = default;
};

enum class ElbowState : std::uint8_t { kIdle, kMovingUp, kMovingDown };
enum class GripState : std::uint8_t { kOpen, kClosing, kHolding, kOpening };
enum class ElbowCommand : std::uint8_t { kOff, kUp, kDown };
enum class GripCommand : std::uint8_t { kOff, kClose, kOpen };

std::string_view to_token(ElbowState s);
std::string_view to_token(GripState s);
std::string_view to_token(ElbowCommand c);
std::string_view to_token(GripCommand c);

struct ControllerOutputs {
  ElbowCommand elbow_cmd = ElbowCommand::kOff;
  GripCommand grip_cmd_out = GripCommand::kOff;

  bool operator==(const ControllerOutputs&) const = default;
};

struct ControllerState {
  ElbowState elbow_fsm = ElbowState::kIdle;
  GripState grip_fsm = GripState::kOpen;
  int opening_timer = 0;
  DebouncerState debouncer;
  bool grip_edge_memory = false;
  int open_timeout_ticks = 3000;

  bool operator==(const ControllerState&) const = default;
};

/// Output port levels. The elbow pair drives the two legs of the h-bridge.
struct PinLevels {
  bool elbow_pin_a = false;
  bool elbow_pin_b = false;
  bool grip_drive_pin = false;
  bool grip_dir_flag = false;

  bool operator==(const PinLevels&) const = default;
};

DebouncerState make_debouncer(int window);

/// Advances every input's counter by one raw sample and returns the debounced
/// frame for this tick. A level flips only after `window` consecutive samples
/// disagree with it, and the flip is reported from the following tick on:
/// a press first sampled at tick 0 reads stable at tick `window`.
SwitchFrame debounce_step(DebouncerState& state, const SwitchFrame& raw);

/// Rising-edge detector on the debounced grip command.
bool grip_trigger(bool& edge_memory, bool stable_grip_cmd);

/// Power-on state: elbow idle, hand open, debouncers settled low.
ControllerState reset_controller(const ControllerConfig& config = {});

/// One controller tick on an already-debounced frame.
ControllerOutputs controller_step(ControllerState& state, const SwitchFrame& stable);

struct TickResult {
  SwitchFrame stable;
  ControllerOutputs outputs;
  bool grip_triggered = false;
};

/// Debounce followed by controller_step.
TickResult controller_tick(ControllerState& state, const SwitchFrame& raw);

PinLevels map_outputs_to_pins(const ControllerOutputs& out);

}  // namespace prosim
