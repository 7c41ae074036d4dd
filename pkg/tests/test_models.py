import math

import numpy as np
import pytest

from hyperlog.core import config
from hyperlog.core.calibration import NearOneCalibration, near_one_calibration
from hyperlog.core.config import DEFAULT_TOL, load_config_file, worker_count
from hyperlog.core.errors import DomainError, UsageError
from hyperlog.models import (
    CheckDocument,
    EvalMethod,
    EvalResult,
    GridSpec,
    HypParams,
    PhiExponents,
    ReportStatus,
    RunSettings,
    VerificationReport,
    ZeroBalancedPair,
)


class TestParams:
    def test_zero_balanced(self):
        assert HypParams(a=0.3, b=0.7, c=1.0).zero_balanced
        assert not HypParams(a=0.3, b=0.7, c=1.5).zero_balanced
        assert HypParams(a=1.0, b=2.0, c=4.0).excess == 1.0

    def test_pair(self):
        pair = ZeroBalancedPair(c=3.0, d=3.0)
        assert pair.a0 == 1.5
        assert not pair.admissible
        assert not pair.product_at_most_one
        assert pair.params == HypParams(a=3.0, b=3.0, c=6.0)
        assert ZeroBalancedPair(c=2.0, d=2.0).admissible

    @pytest.mark.parametrize("fields", [{"c": 0.0, "d": 1.0}, {"c": -1.0, "d": 1.0}, {"c": math.inf, "d": 1.0}])
    def test_invalid_pair(self, fields):
        with pytest.raises(DomainError):
            ZeroBalancedPair.create(**fields)

    @pytest.mark.parametrize("fields", [{"a": 1.5, "b": 2.0}, {"a": 0.5, "b": 0.9}])
    def test_invalid_exponents(self, fields):
        with pytest.raises(DomainError):
            PhiExponents.create(**fields)

    def test_grid(self):
        assert np.allclose(GridSpec(lo=0.0, hi=1.0, n_points=5).points(), [0, 0.25, 0.5, 0.75, 1.0])
        log_grid = GridSpec(lo=1e-2, hi=1e2, n_points=5, spacing="log").points()
        assert log_grid[2] == pytest.approx(1.0)
        with pytest.raises(DomainError):
            GridSpec.create(lo=1.0, hi=0.0, n_points=5)
        with pytest.raises(DomainError):
            GridSpec.create(lo=0.0, hi=1.0, n_points=5, spacing="log")


class TestRunSettings:
    def test_defaults(self):
        settings = RunSettings.from_sources()
        assert settings.tol == DEFAULT_TOL
        assert settings.pair_override() is None
        assert settings.grid("x").n_points == 2048

    def test_flags_override_config(self):
        settings = RunSettings.from_sources({"tol": 1e-6, "grid_n": 64}, {"tol": 1e-8, "grid_n": None})
        assert settings.tol == 1e-8
        assert settings.grid_n == 64
        assert settings.grid("s").n_points == 64

    def test_grid_table(self):
        settings = RunSettings.from_sources({"grids": {"s": {"lo": 0.1, "hi": 10.0, "n_points": 9, "spacing": "log"}}})
        spec = settings.grid("s")
        assert (spec.lo, spec.hi, spec.n_points) == (0.1, 10.0, 9)

    def test_partial_pair_override(self):
        settings = RunSettings(c=0.5)
        assert settings.pair_override() == ZeroBalancedPair(c=0.5, d=0.5)
        assert RunSettings(b=2.0).exponents_override() == PhiExponents(a=1.0, b=2.0)

    def test_invalid_settings(self):
        with pytest.raises(DomainError):
            RunSettings.from_sources(flags={"tol": -1.0})


class TestConfig:
    def test_config_file(self, tmp_path):
        path = tmp_path / "run.toml"
        path.write_text('tol = 1e-10\ngrid_n = 32\n\n[grids.p]\nlo = 0.5\nhi = 4.0\nn_points = 8\nspacing = "log"\n')
        assert load_config_file(path) == {
            "tol": 1e-10,
            "grid_n": 32,
            "grids": {"p": {"lo": 0.5, "hi": 4.0, "n_points": 8, "spacing": "log"}},
        }
        assert load_config_file(None) == {}

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(UsageError):
            load_config_file(tmp_path / "absent.toml")

    def test_invalid_config_file(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("tol = = 1\n")
        with pytest.raises(UsageError):
            load_config_file(path)

    def test_only_runtime_settings_are_exported(self):
        for name in ("ENVIRONMENT", "DEBUG", "PROJECT_ROOT"):
            assert not hasattr(config, name)
        assert config.LOG_LEVEL

    def test_worker_count(self, monkeypatch):
        assert worker_count() == 2
        monkeypatch.setenv("HYPERLOG_THREADS", "0")
        assert worker_count() == 1
        monkeypatch.setenv("HYPERLOG_THREADS", "many")
        with pytest.raises(UsageError):
            worker_count()


class TestResults:
    def test_eval_result_scaled(self):
        result = EvalResult(value=2.0, abs_err_estimate=1e-15, method=EvalMethod.SERIES, n_terms=10)
        scaled = result.scaled(-3.0)
        assert scaled.value == -6.0
        assert scaled.abs_err_estimate == pytest.approx(3e-15)
        assert scaled.n_terms == 10

    def test_document_status(self):
        passing = VerificationReport(theorem_id="a", tolerance=1e-9, status=ReportStatus.PASS, worst_margin=0.0)
        exploratory = passing.model_copy(update={"status": ReportStatus.EXPLORATORY})
        assert CheckDocument.from_reports([passing, exploratory]).status is ReportStatus.PASS
        assert CheckDocument.from_reports([exploratory]).status is ReportStatus.EXPLORATORY


class TestCalibration:
    def test_singleton(self):
        assert NearOneCalibration() is near_one_calibration

    def test_constant_is_measured_once_and_symmetric(self):
        calls = []

        def calibrate(a, b):
            calls.append((a, b))
            return 3.0

        assert near_one_calibration.constant(0.123, 0.456, calibrate) == 3.0
        assert near_one_calibration.constant(0.456, 0.123, calibrate) == 3.0
        assert calls == [(0.123, 0.456)]
        assert near_one_calibration.is_calibrated(0.456, 0.123)
        assert near_one_calibration.snapshot()[(0.123, 0.456)] == 3.0
