"""
Shared fixtures: small sl2 modules, their braidings and the A2 vector module file
"""
from pathlib import Path

import pytest

from app.config import settings
from app.services.metrics_logger import MetricsLogger
from app.services.qmodules import sl2_simple_module
from app.services.ribbon_data import certified_braiding

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session", autouse=True)
def quiet_metrics():
    """Metrics stay in memory during tests"""
    metrics = MetricsLogger()
    metrics.enabled = False
    yield metrics
    metrics.reset()


@pytest.fixture(autouse=True)
def isolated_log_file(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "log_file", str(tmp_path / "app.log"))


@pytest.fixture(scope="session")
def v0():
    return sl2_simple_module(0)


@pytest.fixture(scope="session")
def v1():
    return sl2_simple_module(1)


@pytest.fixture(scope="session")
def v2():
    return sl2_simple_module(2)


@pytest.fixture(scope="session")
def braiding_v1(v1):
    return certified_braiding(v1)


@pytest.fixture(scope="session")
def braiding_v2(v2):
    return certified_braiding(v2)


@pytest.fixture
def a2_vector_file():
    return FIXTURES / "a2_vector.json"
