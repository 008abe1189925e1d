"""Pytest configuration and shared fixtures for test isolation."""

from functools import lru_cache

import numpy as np
import pytest

from mrpsim.controllers.base import ControllerKind
from mrpsim.dynamics import StepConfig
from mrpsim.harness.records import SimRecord
from mrpsim.harness.scenario import builtin_scenario
from mrpsim.harness.simulation import run_simulation
from mrpsim.logger import Logger


@pytest.fixture(autouse=True)
def reset_config_singleton():
    """Reset the config singleton between tests to prevent state leakage.

    The @lru_cache() decorator on get_config() caches the Config instance,
    so environment changes made by one test would otherwise leak into the next.
    """
    yield

    from mrpsim.config import get_config

    get_config.cache_clear()


@pytest.fixture(autouse=True)
def reset_environment():
    """Restore environment variables changed during a test."""
    import os

    original_env = os.environ.copy()

    yield

    os.environ.clear()
    os.environ.update(original_env)


@pytest.fixture
def quiet_logger() -> Logger:
    """Logger that queues events instead of printing them."""
    return Logger(auto_print=False)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so randomized property checks are reproducible."""
    return np.random.default_rng(20240611)


@lru_cache(maxsize=None)
def _closed_loop(scenario: str, kind: ControllerKind, duration: float) -> tuple[SimRecord, ...]:
    step = StepConfig(dt=1e-3, duration=duration)
    records = run_simulation(
        builtin_scenario(scenario, step), kind, logger=Logger(auto_print=False)
    )
    return tuple(records)


@pytest.fixture(scope="session")
def closed_loop():
    """Cached closed-loop runs of the built-in scenarios at dt = 1e-3.

    Usage: ``closed_loop("A", ControllerKind.UFSMC)`` or with an explicit
    duration in seconds as third argument (default 20).
    """

    def run(scenario: str, kind: ControllerKind, duration: float = 20.0) -> tuple[SimRecord, ...]:
        return _closed_loop(scenario, ControllerKind(kind), float(duration))

    return run


def pytest_configure(config):
    """Configure pytest settings."""
    config.addinivalue_line(
        "markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')"
    )
