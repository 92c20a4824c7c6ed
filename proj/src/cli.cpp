#include "prosim/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "prosim/assertions.hpp"
#include "prosim/error.hpp"
#include "prosim/fuzz.hpp"
#include "prosim/motor_model.hpp"
#include "prosim/scenario.hpp"
#include "prosim/settings.hpp"
#include "prosim/sim_engine.hpp"
#include "prosim/trace.hpp"

namespace prosim {

namespace {

// Signals a usage-class failure that has already been reported.
struct UsageFailure {};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fmt::print(err, "error: cannot read '{}'\n", path);
    throw UsageFailure{};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SimSettings settings_from(const std::string& config_path, std::ostream& err) {
  if (config_path.empty()) {
    return SimSettings{};
  }
  const std::string text = read_file(config_path, err);
  try {
    return load_config(text);
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}: {}\n", config_path, e.what());
    throw UsageFailure{};
  }
}

Scenario scenario_from(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path, err);
  ParseResult parsed = parse_scenario(text);
  if (!parsed.ok()) {
    for (const auto& d : parsed.diagnostics) {
      fmt::print(err, "{}:{}\n", path, format_diagnostic(d));
    }
    throw UsageFailure{};
  }
  return std::move(*parsed.scenario);
}

int simulate(const std::string& scenario_path, const std::string& config_path,
             const std::optional<std::string>& out_path, bool write_trace, int stride,
             std::ostream& out, std::ostream& err) {
  const Scenario scenario = scenario_from(scenario_path, err);
  const SimSettings base = settings_from(config_path, err);
  Trace trace;
  try {
    trace = run_simulation(scenario, base);
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
  const AssertionReport report = evaluate_assertions(trace, scenario);

  std::ostream* report_stream = &out;
  if (write_trace) {
    // Assertions always see every tick; the stride only thins the file.
    Trace written;
    written.dt = trace.dt;
    written.stride = stride;
    for (std::size_t i = 0; i < trace.samples.size(); i += static_cast<std::size_t>(stride)) {
      written.samples.push_back(trace.samples[i]);
    }
    const std::string csv = serialize_trace(written);
    if (out_path) {
      std::ofstream f(*out_path, std::ios::binary | std::ios::trunc);
      if (!(f << csv)) {
        fmt::print(err, "error: cannot write '{}'\n", *out_path);
        return kExitUsage;
      }
    } else {
      out << csv;
      report_stream = &err;
    }
  }
  *report_stream << format_report(report);
  return report.pass ? kExitOk : kExitFailed;
}

int fit_motor_command(const std::string& spec_arg, std::ostream& out, std::ostream& err) {
  MotorSpec spec;
  if (auto builtin = builtin_motor_spec(spec_arg)) {
    spec = *builtin;
  } else {
    const std::string text = read_file(spec_arg, err);
    try {
      spec = load_motor_spec(text);
    } catch (const ValidationError& e) {
      fmt::print(err, "error: {}: {}\n", spec_arg, e.what());
      return kExitUsage;
    }
  }
  const MotorParams p = fit_motor(spec);
  const AnchorResiduals r = anchor_residuals(spec, p);
  fmt::print(out, "spec: {}\n", spec_arg);
  fmt::print(out, "no_load_speed: {:.9g} rad/s ({:.9g} rpm)\n", p.no_load_speed,
             rad_per_sec_to_rpm(p.no_load_speed));
  fmt::print(out, "stall_torque: {:.9g} N*m\n", p.stall_torque);
  fmt::print(out, "torque_per_ampere: {:.9g} N*m/A\n", p.torque_per_ampere);
  fmt::print(out, "stall_current: {:.9g} A\n", p.stall_current());
  fmt::print(out, "rated_speed_residual: {:.3e}\n", r.speed_relative);
  fmt::print(out, "rated_current_residual: {:.3e}\n", r.current_relative);
  return kExitOk;
}

int fuzz_command(long long ticks, std::uint64_t seed, const std::string& config_path,
                 std::ostream& out, std::ostream& err) {
  const SimSettings settings = settings_from(config_path, err);
  const FuzzReport report = run_safety_fuzz(settings, ticks, seed);
  if (!report.ok) {
    fmt::print(out, "FAIL seed={} first violation at tick {}: {}\n", seed,
               *report.first_violation_tick, report.violation);
    return kExitFailed;
  }
  fmt::print(out, "PASS seed={} ticks={}\n", seed, ticks);
  for (std::size_t e = 0; e < report.visits.size(); ++e) {
    for (std::size_t g = 0; g < report.visits[e].size(); ++g) {
      fmt::print(out, "  {:<11} {:<7} {}\n", to_token(static_cast<ElbowState>(e)),
                 to_token(static_cast<GripState>(g)), report.visits[e][g]);
    }
  }
  return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Switch-controlled prosthesis co-simulation", "prosim"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string config_path;
  std::string out_path;
  auto* run = app.add_subcommand("run", "Simulate a scenario, write its trace, check assertions");
  run->add_option("--scenario", scenario_path, "Scenario script")->required();
  run->add_option("--config", config_path, "key = value overrides");
  auto* out_opt = run->add_option("--out", out_path, "Trace CSV path (default: stdout)");
  int stride = 1;
  run->add_option("--stride", stride, "Record every n-th tick")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Simulate a scenario and report assertions only");
  check->add_option("--scenario", scenario_path, "Scenario script")->required();
  check->add_option("--config", config_path, "key = value overrides");

  std::string spec_arg;
  auto* fit = app.add_subcommand("fit-motor", "Fit a motor model from datasheet ratings");
  fit->add_option("--spec", spec_arg, "gripper-1271, elbow-80838.5, or a spec file")->required();

  long long ticks = 0;
  std::uint64_t seed = 0;
  auto* fuzz = app.add_subcommand("fuzz", "Random-input safety check of controller and plant");
  fuzz->add_option("--ticks", ticks, "Number of ticks")->required()->check(CLI::PositiveNumber);
  fuzz->add_option("--seed", seed, "Generator seed")->required();
  fuzz->add_option("--config", config_path, "key = value overrides");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    fmt::print(err, "error: {}\n", e.what());
    err << app.help();
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      return simulate(scenario_path, config_path,
                      out_opt->count() ? std::optional<std::string>(out_path) : std::nullopt,
                      true, stride, out, err);
    }
    if (check->parsed()) {
      return simulate(scenario_path, config_path, std::nullopt, false, 1, out, err);
    }
    if (fit->parsed()) {
      return fit_motor_command(spec_arg, out, err);
    }
    if (fuzz->parsed()) {
      return fuzz_command(ticks, seed, config_path, out, err);
    }
  } catch (const UsageFailure&) {
    return kExitUsage;
  } catch (const ValidationError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace prosim
