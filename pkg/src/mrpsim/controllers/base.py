from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum

import numpy as np

from mrpsim.attitude_math import Vec3
from mrpsim.dynamics import BodyErrorState, InertiaMatrix


class ControllerKind(str, Enum):
    UFSMC = "ufsmc"
    SMC = "smc"


@dataclass(frozen=True, slots=True)
class ControlDiagnostics:
    """Per-step controller internals.

    Attributes:
        s: Switching function (rad/s).
        g: Shaping argument ``arctan(e^T sigma_e) - pi/4``.
        rho: Surface gain ``sinh(g) / (1 + |sigma_e|^2)``.
        rho_dot: Time derivative of ``rho`` (1/s).
        h: ``rho |sigma_e|``.
        h_dot: Time derivative of ``h`` (1/s).
        gamma2: Dynamic switching gain (N m), non-negative.
        u_eq: Equivalent control (N m).
        u_n: Switching control (N m).
        theta: Rotation angle about the frozen Euler axis (rad).
    """

    s: Vec3
    g: float
    rho: float
    rho_dot: float
    h: float
    h_dot: float
    gamma2: float
    u_eq: Vec3
    u_n: Vec3
    theta: float

    @classmethod
    def idle(cls, theta: float = 0.0) -> "ControlDiagnostics":
        """Diagnostics of a controller that is not acting."""
        return cls(
            s=np.zeros(3),
            g=0.0,
            rho=0.0,
            rho_dot=0.0,
            h=0.0,
            h_dot=0.0,
            gamma2=0.0,
            u_eq=np.zeros(3),
            u_n=np.zeros(3),
            theta=theta,
        )


class AttitudeController(ABC):
    """Abstract base class for rest-to-rest attitude controllers."""

    kind: ControllerKind

    def __init__(self, J: InertiaMatrix):
        self.J = J

    @abstractmethod
    def control(self, state: BodyErrorState) -> tuple[Vec3, ControlDiagnostics]:
        """Evaluate the control torque (N m) and its diagnostics."""
        pass
