#pragma once

#include <optional>

#include "prosim/controller.hpp"
#include "prosim/motor_model.hpp"

namespace prosim {

inline constexpr double kGravity = 9.81;  // m/s^2

/// Physical parameters of the elbow and gripper drives.
///
/// Angles are measured from the forearm horizontal, positive upward. The
/// elbow motor drives the joint through a worm stage that cannot be
/// back-driven; the gripper motor drives the hand aperture through a lead of
/// `drive_radius` metres per radian of output shaft.
struct PlantParams {
  MotorParams elbow_motor;
  MotorParams grip_motor;

  double worm_ratio = 100.0;
  double worm_efficiency = 0.5;

  double forearm_gravity_torque = 0.5886;  // 0.4 kg at 0.15 m
  double payload_mass = 0.0;
  double payload_lever = 0.30;

  double theta_min = -0.52;
  double theta_max = 2.09;
  double theta_up_limit = 2.00;
  double theta_down_limit = -0.50;
  double initial_theta = 0.0;

  double aperture_max = 0.10;
  double drive_radius = 0.01;
  std::optional<double> object_size;
  double object_stiffness = 2000.0;

  double adc_fullscale_current = 0.5;
  int adc_bits = 8;
  double comparator_threshold = 0.085;
  double comparator_hysteresis = 0.10;

  /// Defaults built from the gripper-1271 and elbow-80838.5 datasheets.
  static PlantParams defaults();

  void validate() const;

  double joint_stall_torque() const {
    return elbow_motor.stall_torque * worm_ratio * worm_efficiency;
  }
  double joint_no_load_speed() const { return elbow_motor.no_load_speed / worm_ratio; }
  int adc_max_code() const { return (1 << adc_bits) - 1; }
};

struct PlantState {
  double theta = 0.0;
  double omega = 0.0;
  double aperture = 0.0;
  /// Signed deflection of the hand end-stops: negative while pressed into the
  /// closed stop, positive into the open stop. Aperture itself never leaves
  /// [0, aperture_max].
  double grip_overtravel = 0.0;
  double grip_current = 0.0;
  double elbow_current = 0.0;
  int adc_code = 0;
  bool comparator_latched = false;

  bool operator==(const PlantState&) const = default;
};

/// Plant-generated part of the controller input frame.
struct SensorFrame {
  bool elbow_max_up_limit = false;
  bool elbow_max_down_limit = false;
  bool overcurrent_comparator = false;

  bool operator==(const SensorFrame&) const = default;
};

PlantState initial_plant_state(const PlantParams& params);
SensorFrame read_sensors(const PlantState& state, const PlantParams& params);

/// Gravity torque about the elbow; positive opposes upward motion.
double gravity_torque(const PlantParams& params, double theta);

int adc_encode(double current, const PlantParams& params);

/// Smallest code whose quantisation cell lies entirely at or above the
/// comparator threshold.
int comparator_trip_code(const PlantParams& params);
double comparator_release_level(const PlantParams& params);

/// Trips at or above the trip code, releases at or below the release level,
/// otherwise holds.
bool comparator_step(bool latched, int code, const PlantParams& params);

/// Contact force resisting the closing direction at a given position.
double grip_closing_force(const PlantParams& params, double aperture, double overtravel);
/// Contact force resisting the opening direction.
double grip_opening_force(const PlantParams& params, double overtravel);

/// Advances the plant by one tick under the given commands. Throws
/// ValidationError for a non-positive dt.
SensorFrame plant_step(PlantState& state, const PlantParams& params,
                       const ControllerOutputs& commands, double dt);

}  // namespace prosim
