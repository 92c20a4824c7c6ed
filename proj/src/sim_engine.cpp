#include "prosim/sim_engine.hpp"

#include <cmath>

#include <fmt/format.h>

#include "prosim/error.hpp"

namespace prosim {

CoSimulation::CoSimulation(const SimSettings& settings)
    : params_((settings.validate(), settings.plant)),
      dt_(settings.dt),
      controller_(reset_controller(settings.controller)),
      plant_(initial_plant_state(settings.plant)),
      sensors_(read_sensors(plant_, params_)) {}

SwitchFrame CoSimulation::compose_raw(const OperatorSwitches& ops) const {
  SwitchFrame f;
  f.elbow_up_cmd = ops.elbow_up;
  f.elbow_down_cmd = ops.elbow_down;
  f.grip_cmd = ops.grip;
  f.elbow_max_up_limit = sensors_.elbow_max_up_limit;
  f.elbow_max_down_limit = sensors_.elbow_max_down_limit;
  f.overcurrent_comparator = sensors_.overcurrent_comparator;
  return f;
}

TraceSample CoSimulation::step(const SwitchFrame& raw) {
  const TickResult ctl = controller_tick(controller_, raw);
  sensors_ = plant_step(plant_, params_, ctl.outputs, dt_);

  TraceSample s;
  s.time = static_cast<double>(tick_) * dt_;
  s.raw = raw;
  s.stable = ctl.stable;
  s.elbow_fsm = controller_.elbow_fsm;
  s.grip_fsm = controller_.grip_fsm;
  s.elbow_cmd = ctl.outputs.elbow_cmd;
  s.grip_cmd_out = ctl.outputs.grip_cmd_out;
  s.theta = plant_.theta;
  s.omega = plant_.omega;
  s.aperture = plant_.aperture;
  s.grip_current = plant_.grip_current;
  s.adc_code = plant_.adc_code;
  s.comparator = plant_.comparator_latched;
  ++tick_;
  return s;
}

void CoSimulation::place_object(double size, double stiffness) {
  params_.object_size = size;
  params_.object_stiffness = stiffness;
}

SimSettings resolve_settings(const Scenario& scenario, SimSettings base) {
  for (const auto& p : scenario.params) {
    try {
      apply_setting(base, p.name, p.value);
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("line {}: {}", p.line, e.what()));
    }
  }
  if (scenario.dt) {
    base.dt = *scenario.dt;
  }
  base.validate();
  return base;
}

long long tick_count(double duration, double dt) {
  return first_tick_at_or_after(duration, dt);
}

Trace run_simulation(const Scenario& scenario, const SimSettings& base, int stride) {
  if (stride < 1) {
    throw ValidationError(fmt::format("stride must be >= 1 (got {})", stride));
  }
  if (!(scenario.duration > 0.0)) {
    throw ValidationError("scenario duration must be > 0");
  }
  const SimSettings settings = resolve_settings(scenario, base);
  CoSimulation sim(settings);

  Trace trace;
  trace.dt = settings.dt;
  trace.stride = stride;
  const long long ticks = tick_count(scenario.duration, settings.dt);
  trace.samples.reserve(static_cast<std::size_t>(ticks / stride + 1));

  OperatorSwitches ops;
  std::size_t next_event = 0;
  const auto& events = scenario.events;
  for (long long n = 0; n < ticks; ++n) {
    while (next_event < events.size() &&
           first_tick_at_or_after(events[next_event].time, settings.dt) <= n) {
      const auto& ev = events[next_event++];
      switch (ev.kind) {
        case EventKind::kPress:
        case EventKind::kRelease: {
          const bool level = ev.kind == EventKind::kPress;
          switch (ev.target) {
            case SwitchName::kElbowUp: ops.elbow_up = level; break;
            case SwitchName::kElbowDown: ops.elbow_down = level; break;
            case SwitchName::kGrip: ops.grip = level; break;
          }
          break;
        }
        case EventKind::kSetPayload: sim.set_payload(ev.mass); break;
        case EventKind::kPlaceObject: sim.place_object(ev.object_size, ev.stiffness); break;
      }
    }
    TraceSample s = sim.step(sim.compose_raw(ops));
    if (n % stride == 0) {
      trace.samples.push_back(s);
    }
  }
  return trace;
}

std::optional<std::string> check_tick_safety(const TickContext& before, const TraceSample& s,
                                             const PlantParams& params) {
  const PinLevels pins = map_outputs_to_pins({s.elbow_cmd, s.grip_cmd_out});
  if (pins.elbow_pin_a && pins.elbow_pin_b) {
    return "elbow h-bridge pins both high";
  }
  if (s.elbow_cmd == ElbowCommand::kUp && s.stable.elbow_max_up_limit) {
    return "elbow driven up while max-up limit asserted";
  }
  if (s.elbow_cmd == ElbowCommand::kDown && s.stable.elbow_max_down_limit) {
    return "elbow driven down while max-down limit asserted";
  }
  if (s.elbow_fsm == ElbowState::kMovingUp &&
      !(s.stable.elbow_up_cmd && !s.stable.elbow_max_up_limit)) {
    return "MOVING_UP without a held up command and clear limit";
  }
  if (s.elbow_fsm == ElbowState::kMovingDown &&
      !(s.stable.elbow_down_cmd && !s.stable.elbow_max_down_limit)) {
    return "MOVING_DOWN without a held down command and clear limit";
  }
  if (s.grip_fsm == GripState::kHolding && before.grip_fsm != GripState::kHolding) {
    // The comparator rule runs after the trigger rule, so a same-tick trigger
    // out of OPEN or OPENING also presents CLOSING to the comparator.
    const bool triggered = s.stable.grip_cmd && !before.grip_cmd;
    const bool closing_seen =
        before.grip_fsm == GripState::kClosing ||
        (triggered && (before.grip_fsm == GripState::kOpen || before.grip_fsm == GripState::kOpening));
    if (!closing_seen || !s.stable.overcurrent_comparator) {
      return "HOLDING entered without a comparator trip from CLOSING";
    }
  }
  if (!(s.theta >= params.theta_min && s.theta <= params.theta_max)) {
    return fmt::format("theta {} outside hard stops", s.theta);
  }
  if (!(s.aperture >= 0.0 && s.aperture <= params.aperture_max)) {
    return fmt::format("aperture {} outside travel", s.aperture);
  }
  if (s.grip_current < 0.0) {
    return "negative grip current";
  }
  return std::nullopt;
}

SafetyReport check_trace_safety(const Trace& trace, const PlantParams& params) {
  SafetyReport report;
  TickContext before;
  for (std::size_t i = 0; i < trace.samples.size(); ++i) {
    if (auto v = check_tick_safety(before, trace.samples[i], params)) {
      report.ok = false;
      report.first_violation_index = static_cast<long long>(i);
      report.violation = *v;
      return report;
    }
    before = TickContext::after(trace.samples[i]);
  }
  return report;
}

}  // namespace prosim
