import math
import os
import subprocess
import sys

import pytest

import prosim

SOURCE_DIR = os.environ.get(
    "PROSIM_SOURCE_DIR", os.path.join(os.path.dirname(__file__), "..", "..")
)


def read(rel):
    with open(os.path.join(SOURCE_DIR, rel)) as f:
        return f.read()


def test_fit_motor_builtin():
    spec = prosim.builtin_motor_spec("gripper-1271")
    p = prosim.fit_motor(spec)
    assert p.stall_torque == pytest.approx(0.45263, abs=1e-4)
    assert p.stall_current == pytest.approx(0.19237, abs=1e-4)
    speed_res, current_res = prosim.anchor_residuals(spec, p)
    assert speed_res <= 1e-9 and current_res <= 1e-9
    rated = 120 * 2 * math.pi / 60
    assert prosim.steady_state_speed(p, 0.2) == pytest.approx(rated, rel=1e-12)
    assert sorted(prosim.builtin_motor_names()) == ["elbow-80838.5", "gripper-1271"]


def test_fit_motor_rejects_bad_spec():
    with pytest.raises(ValueError):
        prosim.fit_motor(prosim.MotorSpec(12, 100, 150, 0.2, 0.085))
    with pytest.raises(KeyError):
        prosim.builtin_motor_spec("wrist")


def test_controller_debounce_and_pins():
    state = prosim.reset_controller()
    frame = prosim.SwitchFrame()
    frame.elbow_up_cmd = True
    outputs = [prosim.controller_tick(state, frame) for _ in range(7)]
    assert [o["elbow_cmd"] for o in outputs] == ["OFF"] * 5 + ["UP"] * 2
    assert outputs[-1]["pins"][:2] == (True, False)
    assert state.elbow_state == "MOVING_UP"


def test_scenario_run_and_assertions():
    sc = prosim.parse_scenario(read("scenarios/lift.scn"))
    trace = prosim.run_simulation(sc)
    assert len(trace) == 1500
    ok, rows = prosim.evaluate_assertions(trace, sc)
    assert ok, rows
    cols = trace.columns()
    assert cols["theta"][999] == pytest.approx(0.0794, abs=1e-4)
    assert cols["elbow_state"][0] == "IDLE"


def test_scenario_errors_carry_positions():
    with pytest.raises(prosim.ScenarioError) as info:
        prosim.parse_scenario("at 0 press WRIST")
    assert (1, 12, "unknown switch WRIST") in info.value.diagnostics


def test_trace_csv_round_trip():
    sc = prosim.parse_scenario("duration 0.02\nat 0 press GRIP\n")
    trace = prosim.run_simulation(sc, stride=2)
    csv = trace.to_csv()
    assert csv.startswith("# stride=2 dt=0.001\ntime,raw_elbow_up_cmd,")
    back = prosim.parse_trace_csv(csv)
    assert back.to_csv() == csv
    assert len(prosim.trace_columns()) == 23


def test_config_text_and_validation():
    sc = prosim.parse_scenario("duration 0.01\n")
    assert len(prosim.run_simulation(sc, config="dt = 0.0005\n")) == 20
    with pytest.raises(ValueError):
        prosim.run_simulation(sc, config="wrist = 1\n")


def test_fuzz_is_deterministic():
    a = prosim.run_safety_fuzz(20000, 42)
    b = prosim.run_safety_fuzz(20000, 42)
    assert a == b
    assert a["ok"] and a["first_violation_tick"] is None


def test_cli_in_process():
    code, out, err = prosim.cli(["fit-motor", "--spec", "elbow-80838.5"])
    assert code == 0, err
    assert "stall_torque: 0.027 " in out
    assert prosim.cli(["nope"])[0] == 2
