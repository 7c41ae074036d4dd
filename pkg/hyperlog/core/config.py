"""
Configuration settings for the application
"""

import os
import tomllib
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from hyperlog.core.errors import UsageError

load_dotenv()

# Application settings
APP_TITLE = "hyperlog"
APP_DESCRIPTION = (
    "Special functions of logarithmic type and numerical verification "
    "of their inequalities"
)
APP_VERSION = "0.1.0"

# Constants
EULER_GAMMA = 0.5772156649015329

# Gauss series
SERIES_REL_STOP = 1e-16
SERIES_STOP_RUN = 3
SERIES_MAX_TERMS = 2_000_000
SERIES_FIRST_CHUNK = 64
SERIES_MAX_CHUNK = 262_144
ZERO_BALANCED_TOL = 1e-14
NEAR_ONE_X = 1.0 - 1e-4
EULER_SWITCH_X = 0.5
F21_CACHE_SIZE = 131_072

# Near-1 error constant calibration window (values of 1 - x)
CALIBRATION_LO = 1e-4
CALIBRATION_HI = 1e-3
CALIBRATION_POINTS = 8
CALIBRATION_SAFETY = 2.0

# Root solver
ROOT_MAX_ITER = 200
ROOT_TOL = 1e-12
ROOT_BRACKET_EXPANSIONS = 60

# Checks
DEFAULT_TOL = 1e-9
MONOTONE_SLACK = 1e-9
CONCAVITY_SLACK = 1e-9
ERROR_WIDENING = 10.0
BREAKPOINT_WINDOW = 1e-9
BREAKPOINT_AGREEMENT = 1e-6
CONCAVITY_EDGE_SKIP = 2
MAX_REPORTED_VIOLATIONS = 25
STRICT_TOL = 1e-13
COEFF_SLACK = 1e-12
ENDPOINT_TOL = 1e-3
SUITE_GRID_N = 512

# Threshold constants for the beta-threshold predicate
THRESHOLD_C0 = 1.0 - 1.0 / (2.0 * 0.6931471805599453)
THRESHOLD_C1 = 1.0 / 0.6931471805599453 - 1.0

# Grid defaults
DEFAULT_GRID_N = 2048
DEFAULT_GRIDS: Dict[str, Dict[str, Any]] = {
    "x": {"lo": 1e-6, "hi": 1.0 - 1e-6, "n_points": DEFAULT_GRID_N, "spacing": "linear"},
    "s": {"lo": 1e-4, "hi": 1e4, "n_points": DEFAULT_GRID_N, "spacing": "log"},
    "u": {"lo": -10.0, "hi": 10.0, "n_points": DEFAULT_GRID_N, "spacing": "linear"},
    "p": {"lo": 0.05, "hi": 20.0, "n_points": 64, "spacing": "log"},
    "r": {"lo": 0.02, "hi": 0.98, "n_points": 20, "spacing": "linear"},
    "t": {"lo": 1e-4, "hi": 1e4, "n_points": DEFAULT_GRID_N, "spacing": "log"},
}

# Environment settings
LOG_LEVEL = os.getenv("HYPERLOG_LOG_LEVEL", "WARNING").upper()


def worker_count() -> int:
    """Number of workers for sweeps, capped by HYPERLOG_THREADS"""
    raw = os.getenv("HYPERLOG_THREADS")
    default = os.cpu_count() or 1
    if raw is None or raw.strip() == "":
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"HYPERLOG_THREADS must be an integer, got {raw!r}")


def load_config_file(path: Optional[Path]) -> Dict[str, Any]:
    """
    Read a TOML config file of key = value pairs

    Args:
        path: Config file location, or None for no file

    Returns:
        Parsed mapping (empty when no file is given)
    """
    if path is None:
        return {}
    try:
        with open(path, "rb") as f:
            return tomllib.load(f)
    except FileNotFoundError:
        raise UsageError(f"Config file not found: {path}")
    except tomllib.TOMLDecodeError as e:
        raise UsageError(f"Invalid config file {path}: {e}")
