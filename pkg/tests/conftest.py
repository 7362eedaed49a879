"""
Shared fixtures for the concurrence test suite.
"""

import pytest

from concurrence.config.settings import reset_settings
from concurrence.simulation.fixtures import toy_fixture


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Each test sees default budgets unless it sets CT_* itself."""
    for name in ("CT_WORK_BUDGET", "CT_EULER_BUDGET", "CT_THREADS", "CT_LATTICE_MAX_VARS"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def dataset_i():
    return toy_fixture("I")


@pytest.fixture
def dataset_iv():
    return toy_fixture("IV")

