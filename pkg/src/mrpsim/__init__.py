"""
mrpsim - unwinding-free attitude maneuver simulation over Modified Rodrigues Parameters
"""

from mrpsim.harness.scenario import ControllerKind, builtin_scenario
from mrpsim.harness.simulation import run_simulation

__version__ = "0.1.0"

__all__ = ["ControllerKind", "builtin_scenario", "run_simulation"]
