#pragma once

#include <optional>
#include <string>

#include "prosim/controller.hpp"
#include "prosim/plant.hpp"
#include "prosim/scenario.hpp"
#include "prosim/settings.hpp"
#include "prosim/trace.hpp"

namespace prosim {

/// Levels of the three operator-worn command switches.
struct OperatorSwitches {
  bool elbow_up = false;
  bool elbow_down = false;
  bool grip = false;
};

/// Controller and plant wired together on a fixed tick.
///
/// The controller sees the plant sensors produced on the previous tick; at
/// tick zero it sees the sensors of the initial plant state.
class CoSimulation {
 public:
  explicit CoSimulation(const SimSettings& settings);

  /// Operator levels merged with the previous tick's plant sensors.
  SwitchFrame compose_raw(const OperatorSwitches& ops) const;

  /// Runs one tick from a complete raw input frame.
  TraceSample step(const SwitchFrame& raw);

  long long tick() const { return tick_; }
  double dt() const { return dt_; }
  const ControllerState& controller() const { return controller_; }
  const PlantState& plant() const { return plant_; }
  const SensorFrame& sensors() const { return sensors_; }
  const PlantParams& params() const { return params_; }

  /// Scenario events change the load and the object mid-run.
  void set_payload(double mass) { params_.payload_mass = mass; }
  void place_object(double size, double stiffness);

 private:
  PlantParams params_;
  double dt_;
  ControllerState controller_;
  PlantState plant_;
  SensorFrame sensors_;
  long long tick_ = 0;
};

/// Applies a scenario's `param` lines and `dt` on top of `base`, validated.
SimSettings resolve_settings(const Scenario& scenario, SimSettings base = {});

/// Number of ticks t = 0, dt, 2dt, ... strictly below `duration`.
long long tick_count(double duration, double dt);

/// Runs the scenario timeline to completion and records every `stride`-th
/// tick. Throws ValidationError for invalid settings or stride.
Trace run_simulation(const Scenario& scenario, const SimSettings& base = {}, int stride = 1);

/// Controller facts carried from the previous tick into a safety check.
/// Defaults describe the power-on state.
struct TickContext {
  GripState grip_fsm = GripState::kOpen;
  bool grip_cmd = false;

  static TickContext after(const TraceSample& s) { return {s.grip_fsm, s.stable.grip_cmd}; }
};

/// Checks the per-tick safety contract of one sample. Returns a description
/// of the first broken rule, if any.
std::optional<std::string> check_tick_safety(const TickContext& before, const TraceSample& sample,
                                             const PlantParams& params);

struct SafetyReport {
  bool ok = true;
  std::optional<long long> first_violation_index;
  std::string violation;
};

/// Re-checks check_tick_safety on every consecutive pair of a stride-1 trace.
SafetyReport check_trace_safety(const Trace& trace, const PlantParams& params);

}  // namespace prosim
