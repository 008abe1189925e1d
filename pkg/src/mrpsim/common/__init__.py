"""Common utilities and shared functionality for mrpsim."""

from mrpsim.common.exceptions import (
    ConfigError,
    DegenerateComposition,
    EmptyRecordsError,
    NonFiniteControl,
    NonFiniteState,
    NumericalError,
    ScenarioMismatch,
    SimulationError,
    ZeroInitialError,
)

__all__ = [
    "SimulationError",
    "DegenerateComposition",
    "ZeroInitialError",
    "NumericalError",
    "NonFiniteState",
    "NonFiniteControl",
    "ConfigError",
    "ScenarioMismatch",
    "EmptyRecordsError",
]
