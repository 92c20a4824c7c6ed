#include "prosim/settings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>

#include <fmt/format.h>

#include "prosim/error.hpp"

namespace prosim {

namespace {

using Setter = std::function<void(SimSettings&, std::string_view)>;

struct SettingDef {
  std::string name;
  Setter set;
};

double number_or_throw(std::string_view name, std::string_view value) {
  double v = 0.0;
  if (!parse_number(value, v)) {
    throw ValidationError(fmt::format("{}: '{}' is not a number", name, value));
  }
  return v;
}

int integer_or_throw(std::string_view name, std::string_view value) {
  long long v = 0;
  if (!parse_integer(value, v) || v < std::numeric_limits<int>::min() ||
      v > std::numeric_limits<int>::max()) {
    throw ValidationError(fmt::format("{}: '{}' is not an integer", name, value));
  }
  return static_cast<int>(v);
}

SettingDef real(std::string name, double PlantParams::*field) {
  return {name, [name, field](SimSettings& s, std::string_view v) {
            s.plant.*field = number_or_throw(name, v);
          }};
}

SettingDef motor(std::string name, MotorParams PlantParams::*which, double MotorParams::*field) {
  return {name, [name, which, field](SimSettings& s, std::string_view v) {
            (s.plant.*which).*field = number_or_throw(name, v);
          }};
}

const std::vector<SettingDef>& registry() {
  static const std::vector<SettingDef> defs = [] {
    std::vector<SettingDef> d;
    d.push_back({"dt", [](SimSettings& s, std::string_view v) { s.dt = number_or_throw("dt", v); }});
    d.push_back({"debounce_ticks", [](SimSettings& s, std::string_view v) {
                   s.controller.debounce_ticks = integer_or_throw("debounce_ticks", v);
                 }});
    d.push_back({"open_timeout_ticks", [](SimSettings& s, std::string_view v) {
                   s.controller.open_timeout_ticks = integer_or_throw("open_timeout_ticks", v);
                 }});
    d.push_back(motor("elbow_motor.no_load_speed", &PlantParams::elbow_motor,
                      &MotorParams::no_load_speed));
    d.push_back(motor("elbow_motor.stall_torque", &PlantParams::elbow_motor,
                      &MotorParams::stall_torque));
    d.push_back(motor("elbow_motor.torque_per_ampere", &PlantParams::elbow_motor,
                      &MotorParams::torque_per_ampere));
    d.push_back(motor("grip_motor.no_load_speed", &PlantParams::grip_motor,
                      &MotorParams::no_load_speed));
    d.push_back(motor("grip_motor.stall_torque", &PlantParams::grip_motor,
                      &MotorParams::stall_torque));
    d.push_back(motor("grip_motor.torque_per_ampere", &PlantParams::grip_motor,
                      &MotorParams::torque_per_ampere));
    d.push_back(real("worm_ratio", &PlantParams::worm_ratio));
    d.push_back(real("worm_efficiency", &PlantParams::worm_efficiency));
    d.push_back(real("forearm_gravity_torque", &PlantParams::forearm_gravity_torque));
    d.push_back(real("payload_mass", &PlantParams::payload_mass));
    d.push_back(real("payload_lever", &PlantParams::payload_lever));
    d.push_back(real("theta_min", &PlantParams::theta_min));
    d.push_back(real("theta_max", &PlantParams::theta_max));
    d.push_back(real("theta_up_limit", &PlantParams::theta_up_limit));
    d.push_back(real("theta_down_limit", &PlantParams::theta_down_limit));
    d.push_back(real("initial_theta", &PlantParams::initial_theta));
    d.push_back(real("aperture_max", &PlantParams::aperture_max));
    d.push_back(real("drive_radius", &PlantParams::drive_radius));
    d.push_back({"object_size", [](SimSettings& s, std::string_view v) {
                   if (v == "none") {
                     s.plant.object_size.reset();
                   } else {
                     s.plant.object_size = number_or_throw("object_size", v);
                   }
                 }});
    d.push_back(real("object_stiffness", &PlantParams::object_stiffness));
    d.push_back(real("adc_fullscale_current", &PlantParams::adc_fullscale_current));
    d.push_back({"adc_bits", [](SimSettings& s, std::string_view v) {
                   s.plant.adc_bits = integer_or_throw("adc_bits", v);
                 }});
    d.push_back(real("comparator_threshold", &PlantParams::comparator_threshold));
    d.push_back(real("comparator_hysteresis", &PlantParams::comparator_hysteresis));
    return d;
  }();
  return defs;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void SimSettings::validate() const {
  plant.validate();
  controller.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError(fmt::format("dt must be > 0 (got {})", dt));
  }
}

const std::vector<std::string>& setting_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& d : registry()) {
      n.push_back(d.name);
    }
    return n;
  }();
  return names;
}

bool is_known_setting(std::string_view name) {
  const auto& defs = registry();
  return std::any_of(defs.begin(), defs.end(), [&](const SettingDef& d) { return d.name == name; });
}

void apply_setting(SimSettings& settings, std::string_view name, std::string_view value) {
  for (const auto& d : registry()) {
    if (d.name == name) {
      d.set(settings, value);
      return;
    }
  }
  throw ValidationError(fmt::format("unknown setting '{}'", name));
}

std::vector<ConfigEntry> parse_config_text(std::string_view text) {
  std::vector<ConfigEntry> entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ValidationError(fmt::format("line {}: expected 'key = value'", line_no));
    }
    entries.push_back({std::string(key), std::string(value), line_no});
  }
  return entries;
}

SimSettings load_config(std::string_view text, SimSettings base) {
  for (const auto& e : parse_config_text(text)) {
    if (!is_known_setting(e.key)) {
      throw ValidationError(fmt::format("line {}: unknown key '{}'", e.line, e.key));
    }
    try {
      apply_setting(base, e.key, e.value);
    } catch (const ValidationError& err) {
      throw ValidationError(fmt::format("line {}: {}", e.line, err.what()));
    }
  }
  base.validate();
  return base;
}

MotorSpec load_motor_spec(std::string_view text) {
  MotorSpec spec;
  const std::pair<const char*, double MotorSpec::*> fields[] = {
      {"nominal_voltage", &MotorSpec::nominal_voltage}, {"no_load_speed", &MotorSpec::no_load_speed},
      {"rated_speed", &MotorSpec::rated_speed},         {"rated_torque", &MotorSpec::rated_torque},
      {"rated_current", &MotorSpec::rated_current},     {"gear_ratio", &MotorSpec::gear_ratio},
      {"mass", &MotorSpec::mass}};
  std::vector<std::string> seen;
  for (const auto& e : parse_config_text(text)) {
    const auto it = std::find_if(std::begin(fields), std::end(fields),
                                 [&](const auto& f) { return e.key == f.first; });
    if (it == std::end(fields)) {
      throw ValidationError(fmt::format("line {}: unknown key '{}'", e.line, e.key));
    }
    double v = 0.0;
    if (!parse_number(e.value, v)) {
      throw ValidationError(fmt::format("line {}: '{}' is not a number", e.line, e.value));
    }
    spec.*(it->second) = v;
    seen.push_back(e.key);
  }
  for (const char* required :
       {"nominal_voltage", "no_load_speed", "rated_speed", "rated_torque", "rated_current"}) {
    if (std::find(seen.begin(), seen.end(), required) == seen.end()) {
      throw ValidationError(fmt::format("missing key '{}'", required));
    }
  }
  spec.validate();
  return spec;
}

bool parse_number(std::string_view text, double& out) {
  if (text.empty()) {
    return false;
  }
  // from_chars rejects a leading '+', which people write in config files.
  if (text.front() == '+') {
    text.remove_prefix(1);
    if (text.empty() || text.front() == '-' || text.front() == '+') {
      return false;
    }
  }
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v,
                                         std::chars_format::general);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return false;
  }
  out = v;
  return true;
}

bool parse_integer(std::string_view text, long long& out) {
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  if (text.empty()) {
    return false;
  }
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    return false;
  }
  out = v;
  return true;
}

}  // namespace prosim
