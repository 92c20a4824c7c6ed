#include "prosim/motor_model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "prosim/error.hpp"

namespace prosim {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void MotorSpec::validate() const {
  if (!positive_finite(nominal_voltage)) {
    throw ValidationError(fmt::format("nominal_voltage must be > 0 (got {})", nominal_voltage));
  }
  if (!positive_finite(no_load_speed)) {
    throw ValidationError(fmt::format("no_load_speed must be > 0 (got {})", no_load_speed));
  }
  // A rated point at zero speed is the stall point itself and still fits a line.
  if (!std::isfinite(rated_speed) || rated_speed < 0.0) {
    throw ValidationError(fmt::format("rated_speed must be >= 0 (got {})", rated_speed));
  }
  if (rated_speed >= no_load_speed) {
    throw ValidationError(fmt::format(
        "rated_speed ({}) must be below no_load_speed ({}): degenerate torque-speed line",
        rated_speed, no_load_speed));
  }
  if (!positive_finite(rated_torque)) {
    throw ValidationError(fmt::format("rated_torque must be > 0 (got {})", rated_torque));
  }
  if (!positive_finite(rated_current)) {
    throw ValidationError(fmt::format("rated_current must be > 0 (got {})", rated_current));
  }
  if (!positive_finite(gear_ratio)) {
    throw ValidationError(fmt::format("gear_ratio must be > 0 (got {})", gear_ratio));
  }
  if (!std::isfinite(mass) || mass < 0.0) {
    throw ValidationError(fmt::format("mass must be >= 0 (got {})", mass));
  }
}

void MotorParams::validate() const {
  if (!positive_finite(no_load_speed)) {
    throw ValidationError(fmt::format("motor no_load_speed must be > 0 (got {})", no_load_speed));
  }
  if (!positive_finite(stall_torque)) {
    throw ValidationError(fmt::format("motor stall_torque must be > 0 (got {})", stall_torque));
  }
  if (!positive_finite(torque_per_ampere)) {
    throw ValidationError(
        fmt::format("motor torque_per_ampere must be > 0 (got {})", torque_per_ampere));
  }
}

MotorParams fit_motor(const MotorSpec& spec) {
  spec.validate();
  MotorParams p;
  p.no_load_speed = rpm_to_rad_per_sec(spec.no_load_speed);
  // tau(w) = tau_s * (1 - w / w_nl) passes through (rated_speed, rated_torque).
  p.stall_torque = spec.rated_torque * spec.no_load_speed / (spec.no_load_speed - spec.rated_speed);
  p.torque_per_ampere = spec.rated_torque / spec.rated_current;
  return p;
}

double steady_state_speed(const MotorParams& params, double load_torque) {
  if (load_torque >= params.stall_torque) {
    return 0.0;
  }
  return std::max(0.0, params.no_load_speed * (1.0 - load_torque / params.stall_torque));
}

double current_draw(const MotorParams& params, double load_torque, bool driven) {
  if (!driven) {
    return 0.0;
  }
  const double delivered = std::clamp(load_torque, 0.0, params.stall_torque);
  return delivered / params.torque_per_ampere;
}

AnchorResiduals anchor_residuals(const MotorSpec& spec, const MotorParams& params) {
  const double rated_w = rpm_to_rad_per_sec(spec.rated_speed);
  const double w = steady_state_speed(params, spec.rated_torque);
  const double i = current_draw(params, spec.rated_torque, true);
  AnchorResiduals r;
  // Relative to the no-load speed when the rated point is the stall point.
  const double w_scale = rated_w > 0.0 ? rated_w : params.no_load_speed;
  r.speed_relative = std::abs(w - rated_w) / w_scale;
  r.current_relative = std::abs(i - spec.rated_current) / spec.rated_current;
  return r;
}

std::optional<MotorSpec> builtin_motor_spec(std::string_view name) {
  if (name == "gripper-1271") {
    // McLennan 1271 series, 10:1 gearhead.
    return MotorSpec{12.0, 215.0, 120.0, 0.2, 0.085, 10.0, 0.055};
  }
  if (name == "elbow-80838.5") {
    // Crouzet 80838.5; rated torque listed as 1.1 N*cm, taken verbatim.
    return MotorSpec{24.0, 135.0, 80.0, 0.011, 0.115, 13.0 / 2.0, 0.145};
  }
  return std::nullopt;
}

std::vector<std::string> builtin_motor_names() { return {"gripper-1271", "elbow-80838.5"}; }

}  // namespace prosim
