"""Co-simulation of a switch-controlled elbow and gripper.

Thin re-export of the compiled ``_prosim`` module.
"""

from ._prosim import (
    ControllerState,
    MotorParams,
    MotorSpec,
    Scenario,
    ScenarioError,
    SwitchFrame,
    Trace,
    TraceSample,
    ValidationError,
    anchor_residuals,
    builtin_motor_names,
    builtin_motor_spec,
    cli,
    controller_tick,
    current_draw,
    evaluate_assertions,
    fit_motor,
    parse_scenario,
    parse_trace_csv,
    reset_controller,
    run_safety_fuzz,
    run_simulation,
    steady_state_speed,
    trace_columns,
)

__all__ = [name for name in dir() if not name.startswith("_")]
