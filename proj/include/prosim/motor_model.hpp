#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prosim {

/// Datasheet ratings of a DC gearmotor, quoted at the gearbox output shaft.
struct MotorSpec {
  double nominal_voltage = 0.0;  // V
  double no_load_speed = 0.0;    // rpm
  double rated_speed = 0.0;      // rpm
  double rated_torque = 0.0;     // N*m
  double rated_current = 0.0;    // A
  double gear_ratio = 1.0;       // metadata only, not re-applied
  double mass = 0.0;             // kg

  /// Throws ValidationError when the ratings cannot define a torque-speed line.
  void validate() const;
};

/// Affine quasi-static gearmotor model.
///
/// Speed falls linearly from `no_load_speed` at zero load to zero at
/// `stall_torque`; current is proportional to delivered torque.
struct MotorParams {
  double no_load_speed = 0.0;      // rad/s
  double stall_torque = 0.0;       // N*m
  double torque_per_ampere = 0.0;  // N*m/A

  double stall_current() const { return stall_torque / torque_per_ampere; }

  void validate() const;
};

constexpr double rpm_to_rad_per_sec(double rpm) {
  return rpm * 2.0 * 3.14159265358979323846 / 60.0;
}

constexpr double rad_per_sec_to_rpm(double w) {
  return w * 60.0 / (2.0 * 3.14159265358979323846);
}

/// Fits the line through the no-load point (no_load_speed, 0) and the rated
/// point (rated_speed, rated_torque). Throws ValidationError on a degenerate
/// spec (rated speed at or above no-load speed, non-positive ratings).
MotorParams fit_motor(const MotorSpec& spec);

/// Quasi-static output speed under a load torque. Clamped to zero at or
/// beyond stall.
double steady_state_speed(const MotorParams& params, double load_torque);

/// Supply current for a load torque; zero when the motor is not driven.
/// Delivered torque saturates at stall, so current saturates at stall current.
double current_draw(const MotorParams& params, double load_torque, bool driven);

/// Residuals of the fitted model at the rated anchor point.
struct AnchorResiduals {
  double speed_relative = 0.0;
  double current_relative = 0.0;
};

AnchorResiduals anchor_residuals(const MotorSpec& spec, const MotorParams& params);

/// Built-in catalogue: "gripper-1271" and "elbow-80838.5".
std::optional<MotorSpec> builtin_motor_spec(std::string_view name);
std::vector<std::string> builtin_motor_names();

}  // namespace prosim
