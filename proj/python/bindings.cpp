#include <sstream>
#include <string>
#include <vector>

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prosim/assertions.hpp"
#include "prosim/cli.hpp"
#include "prosim/controller.hpp"
#include "prosim/error.hpp"
#include "prosim/fuzz.hpp"
#include "prosim/motor_model.hpp"
#include "prosim/plant.hpp"
#include "prosim/scenario.hpp"
#include "prosim/settings.hpp"
#include "prosim/sim_engine.hpp"
#include "prosim/trace.hpp"

namespace py = pybind11;
using namespace prosim;

namespace {

// Scenario errors surface as ScenarioError carrying every diagnostic.
Scenario parse_or_raise(const std::string& text, const py::object& error_type) {
  ParseResult r = parse_scenario(text);
  if (r.ok()) {
    return std::move(*r.scenario);
  }
  std::string msg;
  py::list diags;
  for (const auto& d : r.diagnostics) {
    msg += format_diagnostic(d) + "\n";
    diags.append(py::make_tuple(d.line, d.column, d.message));
  }
  py::object exc = error_type(msg);
  exc.attr("diagnostics") = diags;
  PyErr_SetObject(error_type.ptr(), exc.ptr());
  throw py::error_already_set();
}

SimSettings settings_from(const std::optional<std::string>& config) {
  return config ? load_config(*config) : SimSettings{};
}

py::dict trace_columns_dict(const Trace& t) {
  std::vector<double> time, theta, omega, aperture, current;
  std::vector<int> adc;
  std::vector<bool> comparator;
  std::vector<std::string> elbow, grip;
  for (const auto& s : t.samples) {
    time.push_back(s.time);
    theta.push_back(s.theta);
    omega.push_back(s.omega);
    aperture.push_back(s.aperture);
    current.push_back(s.grip_current);
    adc.push_back(s.adc_code);
    comparator.push_back(s.comparator);
    elbow.emplace_back(to_token(s.elbow_fsm));
    grip.emplace_back(to_token(s.grip_fsm));
  }
  py::dict d;
  d["time"] = time;
  d["theta"] = theta;
  d["omega"] = omega;
  d["aperture"] = aperture;
  d["grip_current"] = current;
  d["adc_code"] = adc;
  d["comparator"] = comparator;
  d["elbow_state"] = elbow;
  d["grip_state"] = grip;
  return d;
}

}  // namespace

PYBIND11_MODULE(_prosim, m) {
  m.doc() = "Co-simulation of a switch-controlled elbow and gripper";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  static py::exception<std::runtime_error> scenario_error(m, "ScenarioError", PyExc_ValueError);

  // Motor model.
  py::class_<MotorSpec>(m, "MotorSpec")
      .def(py::init<>())
      .def(py::init([](double v, double nl, double rs, double rt, double rc) {
             MotorSpec s;
             s.nominal_voltage = v;
             s.no_load_speed = nl;
             s.rated_speed = rs;
             s.rated_torque = rt;
             s.rated_current = rc;
             return s;
           }),
           py::arg("nominal_voltage"), py::arg("no_load_speed"), py::arg("rated_speed"),
           py::arg("rated_torque"), py::arg("rated_current"))
      .def_readwrite("nominal_voltage", &MotorSpec::nominal_voltage)
      .def_readwrite("no_load_speed", &MotorSpec::no_load_speed)
      .def_readwrite("rated_speed", &MotorSpec::rated_speed)
      .def_readwrite("rated_torque", &MotorSpec::rated_torque)
      .def_readwrite("rated_current", &MotorSpec::rated_current)
      .def_readwrite("gear_ratio", &MotorSpec::gear_ratio)
      .def_readwrite("mass", &MotorSpec::mass);

  py::class_<MotorParams>(m, "MotorParams")
      .def_readonly("no_load_speed", &MotorParams::no_load_speed)
      .def_readonly("stall_torque", &MotorParams::stall_torque)
      .def_readonly("torque_per_ampere", &MotorParams::torque_per_ampere)
      .def_property_readonly("stall_current", &MotorParams::stall_current)
      .def("__repr__", [](const MotorParams& p) {
        std::ostringstream os;
        os << "MotorParams(no_load_speed=" << p.no_load_speed
           << ", stall_torque=" << p.stall_torque
           << ", torque_per_ampere=" << p.torque_per_ampere << ")";
        return os.str();
      });

  m.def("builtin_motor_spec",
        [](const std::string& name) {
          auto s = builtin_motor_spec(name);
          if (!s) {
            throw py::key_error(name);
          }
          return *s;
        },
        py::arg("name"));
  m.def("builtin_motor_names", &builtin_motor_names);
  m.def("fit_motor", &fit_motor, py::arg("spec"));
  m.def("steady_state_speed", &steady_state_speed, py::arg("params"), py::arg("load_torque"));
  m.def("current_draw", &current_draw, py::arg("params"), py::arg("load_torque"),
        py::arg("enabled") = true);
  m.def("anchor_residuals",
        [](const MotorSpec& s, const MotorParams& p) {
          const AnchorResiduals r = anchor_residuals(s, p);
          return py::make_tuple(r.speed_relative, r.current_relative);
        },
        py::arg("spec"), py::arg("params"),
        "(rated speed, rated current) relative residuals of the fitted line.");

  // Controller.
  py::class_<SwitchFrame>(m, "SwitchFrame")
      .def(py::init<>())
      .def_static("from_bits", &SwitchFrame::from_bits, py::arg("mask"))
      .def("to_bits", &SwitchFrame::to_bits)
      .def_readwrite("elbow_up_cmd", &SwitchFrame::elbow_up_cmd)
      .def_readwrite("elbow_down_cmd", &SwitchFrame::elbow_down_cmd)
      .def_readwrite("grip_cmd", &SwitchFrame::grip_cmd)
      .def_readwrite("elbow_max_up_limit", &SwitchFrame::elbow_max_up_limit)
      .def_readwrite("elbow_max_down_limit", &SwitchFrame::elbow_max_down_limit)
      .def_readwrite("overcurrent_comparator", &SwitchFrame::overcurrent_comparator)
      .def(py::self == py::self);

  py::class_<ControllerState>(m, "ControllerState")
      .def_property_readonly("elbow_state",
                             [](const ControllerState& s) { return std::string(to_token(s.elbow_fsm)); })
      .def_property_readonly("grip_state",
                             [](const ControllerState& s) { return std::string(to_token(s.grip_fsm)); })
      .def_readonly("opening_timer", &ControllerState::opening_timer);

  m.def("reset_controller",
        [](int debounce_ticks, int open_timeout_ticks) {
          return reset_controller({debounce_ticks, open_timeout_ticks});
        },
        py::arg("debounce_ticks") = 5, py::arg("open_timeout_ticks") = 3000);
  m.def("controller_tick",
        [](ControllerState& s, const SwitchFrame& raw) {
          const TickResult r = controller_tick(s, raw);
          const PinLevels p = map_outputs_to_pins(r.outputs);
          py::dict d;
          d["elbow_cmd"] = std::string(to_token(r.outputs.elbow_cmd));
          d["grip_cmd"] = std::string(to_token(r.outputs.grip_cmd_out));
          d["pins"] = py::make_tuple(p.elbow_pin_a, p.elbow_pin_b, p.grip_drive_pin, p.grip_dir_flag);
          d["grip_triggered"] = r.grip_triggered;
          return d;
        },
        py::arg("state"), py::arg("raw"),
        "Debounce one raw frame and step the controller in place.");

  // Scenarios and traces.
  py::class_<TraceSample>(m, "TraceSample")
      .def_readonly("time", &TraceSample::time)
      .def_readonly("theta", &TraceSample::theta)
      .def_readonly("omega", &TraceSample::omega)
      .def_readonly("aperture", &TraceSample::aperture)
      .def_readonly("grip_current", &TraceSample::grip_current)
      .def_readonly("adc_code", &TraceSample::adc_code)
      .def_readonly("comparator", &TraceSample::comparator)
      .def_property_readonly("elbow_state",
                             [](const TraceSample& s) { return std::string(to_token(s.elbow_fsm)); })
      .def_property_readonly("grip_state",
                             [](const TraceSample& s) { return std::string(to_token(s.grip_fsm)); });

  py::class_<Trace>(m, "Trace")
      .def_readonly("dt", &Trace::dt)
      .def_readonly("stride", &Trace::stride)
      .def_readonly("samples", &Trace::samples)
      .def("__len__", [](const Trace& t) { return t.samples.size(); })
      .def("to_csv", &serialize_trace)
      .def("columns", &trace_columns_dict, "Main signals as a dict of lists.");

  m.def("trace_columns", &trace_columns);
  m.def("parse_trace_csv", &parse_trace_csv, py::arg("csv"));

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("dt", &Scenario::dt)
      .def_readonly("duration", &Scenario::duration)
      .def_property_readonly("event_count", [](const Scenario& s) { return s.events.size(); })
      .def_property_readonly("assertion_count",
                             [](const Scenario& s) { return s.assertions.size(); })
      .def("to_text", &format_scenario);

  m.def("parse_scenario",
        [](const std::string& text) { return parse_or_raise(text, scenario_error); },
        py::arg("text"), "Parse a scenario script; raises ScenarioError with .diagnostics.");

  m.def("run_simulation",
        [](const Scenario& sc, const std::optional<std::string>& config, int stride) {
          return run_simulation(sc, settings_from(config), stride);
        },
        py::arg("scenario"), py::arg("config") = py::none(), py::arg("stride") = 1,
        "Run a parsed scenario. `config` is optional key = value text.");

  m.def("evaluate_assertions",
        [](const Trace& t, const Scenario& sc) {
          const AssertionReport r = evaluate_assertions(t, sc);
          py::list rows;
          for (const auto& a : r.results) {
            rows.append(py::make_tuple(a.line, a.pass, a.observed, a.expected));
          }
          return py::make_tuple(r.pass, rows);
        },
        py::arg("trace"), py::arg("scenario"),
        "(overall pass, [(line, pass, observed, expected), ...]).");

  m.def("run_safety_fuzz",
        [](long long ticks, std::uint64_t seed, const std::optional<std::string>& config) {
          const FuzzReport r = run_safety_fuzz(settings_from(config), ticks, seed);
          py::dict d;
          d["ok"] = r.ok;
          d["ticks"] = r.ticks;
          d["first_violation_tick"] = r.first_violation_tick;
          d["violation"] = r.violation;
          return d;
        },
        py::arg("ticks"), py::arg("seed"), py::arg("config") = py::none());

  m.def("cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out;
          std::ostringstream err;
          const int code = cli_dispatch(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process: (exit code, stdout, stderr).");
}
