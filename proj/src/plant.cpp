#include "prosim/plant.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "prosim/error.hpp"

namespace prosim {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw ValidationError(message);
  }
}

bool finite(double v) { return std::isfinite(v); }

struct ElbowMotion {
  double omega = 0.0;
  double current = 0.0;
};

ElbowMotion drive_elbow(const PlantParams& p, double theta, bool up) {
  const double g = gravity_torque(p, theta);
  // The worm stage is only ever driven from the motor side, so gravity can
  // relieve load but never accelerate the joint beyond the drive speed.
  const double joint_load = std::max(0.0, up ? g : -g);
  const MotorParams joint{p.joint_no_load_speed(), p.joint_stall_torque(), 1.0};
  const double motor_load = joint_load / (p.worm_ratio * p.worm_efficiency);

  const bool at_stop = up ? theta >= p.theta_max : theta <= p.theta_min;
  if (at_stop) {
    return {0.0, p.elbow_motor.stall_current()};
  }
  const double speed = steady_state_speed(joint, joint_load);
  return {up ? speed : -speed, current_draw(p.elbow_motor, motor_load, true)};
}

}  // namespace

PlantParams PlantParams::defaults() {
  PlantParams p;
  p.elbow_motor = fit_motor(*builtin_motor_spec("elbow-80838.5"));
  p.grip_motor = fit_motor(*builtin_motor_spec("gripper-1271"));
  return p;
}

void PlantParams::validate() const {
  elbow_motor.validate();
  grip_motor.validate();
  require(finite(worm_ratio) && worm_ratio > 0.0,
          fmt::format("worm_ratio must be > 0 (got {})", worm_ratio));
  require(finite(worm_efficiency) && worm_efficiency > 0.0 && worm_efficiency <= 1.0,
          fmt::format("worm_efficiency must be in (0, 1] (got {})", worm_efficiency));
  require(finite(forearm_gravity_torque),
          fmt::format("forearm_gravity_torque must be finite (got {})", forearm_gravity_torque));
  require(finite(payload_mass) && payload_mass >= 0.0,
          fmt::format("payload_mass must be >= 0 (got {})", payload_mass));
  require(finite(payload_lever) && payload_lever >= 0.0,
          fmt::format("payload_lever must be >= 0 (got {})", payload_lever));
  require(finite(theta_min) && finite(theta_max) && finite(theta_up_limit) &&
              finite(theta_down_limit) && theta_min < theta_down_limit &&
              theta_down_limit < theta_up_limit && theta_up_limit < theta_max,
          fmt::format("angles must satisfy theta_min < theta_down_limit < theta_up_limit < "
                      "theta_max (got {}, {}, {}, {})",
                      theta_min, theta_down_limit, theta_up_limit, theta_max));
  require(finite(initial_theta) && initial_theta >= theta_min && initial_theta <= theta_max,
          fmt::format("initial_theta must lie within [theta_min, theta_max] (got {})",
                      initial_theta));
  require(finite(aperture_max) && aperture_max > 0.0,
          fmt::format("aperture_max must be > 0 (got {})", aperture_max));
  require(finite(drive_radius) && drive_radius > 0.0,
          fmt::format("drive_radius must be > 0 (got {})", drive_radius));
  if (object_size) {
    require(finite(*object_size) && *object_size > 0.0,
            fmt::format("object_size must be > 0 (got {})", *object_size));
  }
  require(finite(object_stiffness) && object_stiffness > 0.0,
          fmt::format("object_stiffness must be > 0 (got {})", object_stiffness));
  require(adc_bits >= 1 && adc_bits <= 16,
          fmt::format("adc_bits must be in [1, 16] (got {})", adc_bits));
  require(finite(adc_fullscale_current) && adc_fullscale_current > 0.0,
          fmt::format("adc_fullscale_current must be > 0 (got {})", adc_fullscale_current));
  require(finite(comparator_threshold) && comparator_threshold > 0.0 &&
              comparator_threshold <= adc_fullscale_current,
          fmt::format("comparator_threshold must be in (0, adc_fullscale_current] (got {})",
                      comparator_threshold));
  require(finite(comparator_hysteresis) && comparator_hysteresis >= 0.0 &&
              comparator_hysteresis < 1.0,
          fmt::format("comparator_hysteresis must be in [0, 1) (got {})", comparator_hysteresis));
}

PlantState initial_plant_state(const PlantParams& params) {
  PlantState s;
  s.theta = params.initial_theta;
  s.aperture = params.aperture_max;
  return s;
}

SensorFrame read_sensors(const PlantState& state, const PlantParams& params) {
  return SensorFrame{state.theta >= params.theta_up_limit,
                     state.theta <= params.theta_down_limit, state.comparator_latched};
}

double gravity_torque(const PlantParams& params, double theta) {
  const double at_horizontal =
      params.forearm_gravity_torque + params.payload_mass * kGravity * params.payload_lever;
  return at_horizontal * std::cos(theta);
}

int adc_encode(double current, const PlantParams& params) {
  const int top = params.adc_max_code();
  const double scaled = current / params.adc_fullscale_current * top;
  if (!(scaled > 0.0)) {
    return 0;
  }
  return static_cast<int>(std::min<double>(std::round(scaled), top));
}

int comparator_trip_code(const PlantParams& params) {
  const int top = params.adc_max_code();
  const double lsb = params.adc_fullscale_current / top;
  const double code = std::ceil(params.comparator_threshold / lsb + 0.5);
  return static_cast<int>(std::clamp<double>(code, 1.0, top));
}

double comparator_release_level(const PlantParams& params) {
  return comparator_trip_code(params) * (1.0 - params.comparator_hysteresis);
}

bool comparator_step(bool latched, int code, const PlantParams& params) {
  if (code >= comparator_trip_code(params)) {
    return true;
  }
  if (code <= comparator_release_level(params)) {
    return false;
  }
  return latched;
}

double grip_closing_force(const PlantParams& params, double aperture, double overtravel) {
  double force = params.object_stiffness * std::max(0.0, -overtravel);
  if (params.object_size && aperture < *params.object_size) {
    force += params.object_stiffness * (*params.object_size - aperture);
  }
  return force;
}

double grip_opening_force(const PlantParams& params, double overtravel) {
  return params.object_stiffness * std::max(0.0, overtravel);
}

SensorFrame plant_step(PlantState& state, const PlantParams& params,
                       const ControllerOutputs& commands, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError(fmt::format("dt must be > 0 (got {})", dt));
  }

  // Elbow. With the drive off the worm gear holds the joint exactly.
  if (commands.elbow_cmd == ElbowCommand::kOff) {
    state.omega = 0.0;
    state.elbow_current = 0.0;
  } else {
    const bool up = commands.elbow_cmd == ElbowCommand::kUp;
    const ElbowMotion m = drive_elbow(params, state.theta, up);
    const double target = state.theta + m.omega * dt;
    const double next = std::clamp(target, params.theta_min, params.theta_max);
    state.omega = next == target ? m.omega : (next - state.theta) / dt;
    state.theta = next;
    state.elbow_current = m.current;
  }

  // Gripper. Position and end-stop deflection move together as one virtual
  // coordinate; the aperture is its projection onto the travel range.
  const double r = params.drive_radius;
  switch (commands.grip_cmd_out) {
    case GripCommand::kOff:
      state.grip_current = 0.0;
      break;
    case GripCommand::kClose: {
      const double load = grip_closing_force(params, state.aperture, state.grip_overtravel) * r;
      const double w = steady_state_speed(params.grip_motor, load);
      const double x = state.aperture + state.grip_overtravel - r * w * dt;
      state.aperture = std::clamp(x, 0.0, params.aperture_max);
      state.grip_overtravel = x - state.aperture;
      state.grip_current = current_draw(
          params.grip_motor, grip_closing_force(params, state.aperture, state.grip_overtravel) * r,
          true);
      break;
    }
    case GripCommand::kOpen: {
      const double load = grip_opening_force(params, state.grip_overtravel) * r;
      const double w = steady_state_speed(params.grip_motor, load);
      const double x = state.aperture + state.grip_overtravel + r * w * dt;
      state.aperture = std::clamp(x, 0.0, params.aperture_max);
      state.grip_overtravel = x - state.aperture;
      state.grip_current =
          current_draw(params.grip_motor, grip_opening_force(params, state.grip_overtravel) * r, true);
      break;
    }
  }

  state.adc_code = adc_encode(state.grip_current, params);
  state.comparator_latched = comparator_step(state.comparator_latched, state.adc_code, params);
  return read_sensors(state, params);
}

}  // namespace prosim
