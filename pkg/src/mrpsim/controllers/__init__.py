"""Attitude control laws."""

from mrpsim.controllers.base import AttitudeController, ControlDiagnostics, ControllerKind
from mrpsim.controllers.baseline_smc import SmcController, SmcParams, smc_control
from mrpsim.controllers.ufsmc import UfsmcController, UfsmcMemory, UfsmcParams, ufsmc_control

__all__ = [
    "AttitudeController",
    "ControlDiagnostics",
    "ControllerKind",
    "SmcController",
    "SmcParams",
    "smc_control",
    "UfsmcController",
    "UfsmcMemory",
    "UfsmcParams",
    "ufsmc_control",
]
