import pandas as pd
import pytest

from hyperlog.core.errors import OutputError, UsageError
from hyperlog.models import ReportStatus, RunSettings
from hyperlog.services.sweeps import run_sweep, sweep_names


def test_sweep_names():
    assert sweep_names() == ["addition-ratio", "addition-gap", "phi-g-constant", "beta-profile", "omega-p-profile"]


def test_addition_gap_for_unit_pair(tmp_path):
    out = tmp_path / "gap.csv"
    document, frame = run_sweep("addition-gap", RunSettings(c=1.0, d=1.0, grid_n=5), out)
    assert document.columns == ["x", "y", "gap"]
    assert document.n_rows == 25
    assert document.out == str(out)
    assert document.report.status is ReportStatus.EXPLORATORY
    written = pd.read_csv(out)
    assert list(written.columns) == ["x", "y", "gap"]
    assert written["gap"].abs().max() < 1e-10
    assert frame["gap"].abs().max() < 1e-10


def test_addition_ratio_columns():
    document, frame = run_sweep("addition-ratio", RunSettings(grid_n=4))
    assert document.columns == ["x", "y", "lhs", "rhs", "gap"]
    assert document.out is None
    assert (frame["gap"] == frame["rhs"] - frame["lhs"]).all()
    assert document.report.details["min_ratio"] == pytest.approx(1.0, abs=1e-10)


def test_phi_g_constant(tmp_path):
    document, frame = run_sweep("phi-g-constant", RunSettings(c=1.0, d=1.0, a=0.5, b=2.0, grid_n=16), tmp_path / "t.csv")
    assert document.n_rows == 16
    assert (frame["rhs"] == 4.0).all()
    assert document.report.details["max_ratio"] <= 1.0 + 1e-9
    assert document.report.params == {"a": 0.5, "b": 2.0, "c": 1.0, "d": 1.0}


def test_beta_profile():
    document, frame = run_sweep("beta-profile", RunSettings(c=0.5, d=0.5, grid_n=8))
    assert document.columns == ["x", "lhs", "rhs", "gap"]
    assert len(frame) == 8
    assert (frame["lhs"] > 0).all()


def test_omega_profile():
    document, frame = run_sweep("omega-p-profile", RunSettings(grid_n=4))
    assert document.columns == ["r", "p", "lhs", "rhs", "gap"]
    # four r values, three consecutive p pairs each
    assert document.n_rows == 12
    assert document.report.details["min_gap"] >= -1e-12


def test_unknown_sweep():
    with pytest.raises(UsageError):
        run_sweep("nope", RunSettings())


def test_unwritable_output(tmp_path):
    with pytest.raises(OutputError):
        run_sweep("addition-gap", RunSettings(grid_n=3), tmp_path / "missing" / "gap.csv")
