#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "prosim/controller.hpp"
#include "prosim/plant.hpp"

namespace prosim {

/// Everything a run needs besides the scenario timeline.
struct SimSettings {
  PlantParams plant = PlantParams::defaults();
  ControllerConfig controller;
  double dt = 0.001;

  void validate() const;
};

/// Names accepted by `apply_setting`, in documentation order.
const std::vector<std::string>& setting_names();
bool is_known_setting(std::string_view name);

/// Sets one named field from its text form. Throws ValidationError for an
/// unknown name or an unparsable value. Cross-field invariants are checked
/// separately by SimSettings::validate().
void apply_setting(SimSettings& settings, std::string_view name, std::string_view value);

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Splits `key = value` lines; '#' starts a comment. Throws ValidationError
/// naming the line on malformed input.
std::vector<ConfigEntry> parse_config_text(std::string_view text);

/// Applies a config file's entries on top of `base` and validates the result.
SimSettings load_config(std::string_view text, SimSettings base = {});

/// Motor spec from the same `key = value` format (nominal_voltage,
/// no_load_speed, rated_speed, rated_torque, rated_current, gear_ratio, mass).
MotorSpec load_motor_spec(std::string_view text);

/// Strict decimal parse; rejects trailing garbage, NaN and infinities.
bool parse_number(std::string_view text, double& out);
bool parse_integer(std::string_view text, long long& out);

}  // namespace prosim
