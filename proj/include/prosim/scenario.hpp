#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prosim {

enum class SwitchName { kElbowUp, kElbowDown, kGrip };
enum class EventKind { kPress, kRelease, kSetPayload, kPlaceObject };

enum class TraceField {
  kTheta,
  kOmega,
  kAperture,
  kGripCurrent,
  kAdcCode,
  kElbowState,
  kGripState,
  kComparator,
};

std::string_view to_token(SwitchName s);
std::string_view to_token(TraceField f);
std::optional<SwitchName> switch_from_token(std::string_view token);
std::optional<TraceField> field_from_token(std::string_view token);

struct ScenarioEvent {
  double time = 0.0;
  EventKind kind = EventKind::kPress;
  SwitchName target = SwitchName::kElbowUp;  // press / release
  double mass = 0.0;                         // set-payload
  double object_size = 0.0;                  // place-object
  double stiffness = 0.0;                    // place-object
  int line = 0;
};

struct ScenarioAssertion {
  double time = 0.0;
  TraceField field = TraceField::kTheta;
  /// Set for `= TOKEN` assertions; otherwise [min, max] applies.
  std::optional<std::string> token;
  double min = 0.0;
  double max = 0.0;
  int line = 0;
};

struct ParamOverride {
  std::string name;
  std::string value;
  int line = 0;
};

/// A scripted run: timing directives, parameter overrides, a timeline of
/// stimuli and assertions on the resulting trace. Events and assertions are
/// kept sorted by time; ties keep file order.
struct Scenario {
  std::optional<double> dt;
  double duration = 0.0;
  std::vector<ParamOverride> params;
  std::vector<ScenarioEvent> events;
  std::vector<ScenarioAssertion> assertions;
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

std::string format_diagnostic(const Diagnostic& d);

struct ParseResult {
  std::optional<Scenario> scenario;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return scenario.has_value(); }
};

/// Parses a scenario script, collecting every diagnosable error.
///
///   dt <s> | duration <s> | param <name> <value>
///   at <t> press|release <ELBOW_UP|ELBOW_DOWN|GRIP>
///   at <t> set-payload <kg> | at <t> place-object <size_m> <stiffness_N_per_m>
///   expect <t> <field> <min> <max> | expect <t> <field> = <TOKEN>
ParseResult parse_scenario(std::string_view text);

/// Canonical script text; parse_scenario(format_scenario(s)) reproduces s
/// apart from line numbers.
std::string format_scenario(const Scenario& scenario);

/// Structural equality ignoring source line numbers.
bool same_content(const Scenario& a, const Scenario& b);

/// First tick index n with n * dt >= time (tolerant of rounding in n * dt).
long long first_tick_at_or_after(double time, double dt);

}  // namespace prosim
