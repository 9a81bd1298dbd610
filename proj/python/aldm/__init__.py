"""Python access to the lane-detection core."""

import json

from ._aldm import (
    AldmError,
    AldmParams,
    ConfigError,
    DegenerateInput,
    InvalidSpec,
    LaneDetectionFailure,
    SensorConfig,
    builtin_config,
    builtin_scenario_names,
    detect_frame,
    fit_cubic,
    fit_quadratic,
)
from . import _aldm

__all__ = [
    "AldmError",
    "AldmParams",
    "ConfigError",
    "DegenerateInput",
    "InvalidSpec",
    "LaneDetectionFailure",
    "SensorConfig",
    "builtin_config",
    "builtin_scenario_names",
    "detect_frame",
    "fit_cubic",
    "fit_quadratic",
    "run_builtin",
    "run_config",
]


def run_builtin(name, threads=0, out_dir=None, plots=False):
    """Run a built-in scenario and return the parsed report.json document."""
    return json.loads(_aldm.run_builtin_json(name, threads, out_dir or "", plots))


def run_config(text, threads=0, out_dir=None, plots=False):
    """Run a scenario given as INI text and return the parsed report.json document."""
    return json.loads(_aldm.run_config_json(text, threads, out_dir or "", plots))
