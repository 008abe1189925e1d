"""
Custom exceptions for attitude algebra, simulation and configuration.

Provides specific exception types for better error handling and debugging.
"""

from typing import Optional


class SimulationError(Exception):
    """Base exception for all simulator errors."""

    pass


class DegenerateComposition(SimulationError):
    """Raised when an MRP composition denominator vanishes.

    Examples:
        - Composing two rotations whose product is a full 360 degree turn
        - Error attitude of the printed formula at an opposite attitude pair
    """

    pass


class ZeroInitialError(SimulationError):
    """Raised when the Euler axis is requested for a zero initial error.

    The maneuver is already at its goal; callers skip control shaping.
    """

    pass


class NumericalError(SimulationError):
    """Base class for numerical blow-ups, carrying the failing time.

    Attributes:
        t: Simulation time in seconds at which the failure was detected
    """

    def __init__(self, message: str, t: Optional[float] = None):
        self.t = t
        if t is not None:
            message = f"{message} (t={t:.6g} s)"
        super().__init__(message)


class NonFiniteState(NumericalError):
    """Raised when an integration step produces a non-finite state component."""

    pass


class NonFiniteControl(NumericalError):
    """Raised when a controller produces a non-finite torque component."""

    pass


class ConfigError(SimulationError):
    """Raised when a configuration document fails parsing or validation.

    Attributes:
        key_path: Dotted path of the offending key (e.g. ``ufsmc.gamma1``)
    """

    def __init__(self, message: str, key_path: str = ""):
        self.key_path = key_path
        super().__init__(f"{key_path}: {message}" if key_path else message)


class ScenarioMismatch(SimulationError):
    """Raised when metrics from different scenarios are compared."""

    pass


class EmptyRecordsError(SimulationError):
    """Raised when an operation needs at least one simulation record."""

    pass
