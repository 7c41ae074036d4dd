import pytest

from hyperlog.models import PhiExponents, RunSettings, ZeroBalancedPair


@pytest.fixture(autouse=True)
def two_workers(monkeypatch):
    """Keep the joblib pool small and the .env file out of the picture"""
    monkeypatch.setenv("HYPERLOG_THREADS", "2")


@pytest.fixture
def unit_pair():
    # F(1, 1; 2; x) = log(1/(1-x))/x, so g(x) = log(1/(1-x))
    return ZeroBalancedPair(c=1.0, d=1.0)


@pytest.fixture
def exponents():
    return PhiExponents(a=0.5, b=2.0)


@pytest.fixture
def small_settings():
    def make(**fields):
        fields.setdefault("grid_n", 16)
        return RunSettings(**fields)

    return make
