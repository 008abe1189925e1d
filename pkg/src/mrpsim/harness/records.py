import math
from dataclasses import dataclass
from typing import Optional

from pydantic import BaseModel

from mrpsim.attitude_math import EulerAngles, Mrp, Vec3
from mrpsim.controllers.base import ControlDiagnostics


@dataclass(frozen=True, slots=True)
class SimRecord:
    """One telemetry sample of a closed-loop run.

    ``v = e^T s``, ``V2 = s^T s / 2`` and ``V1 = cosh(pi/4) - cosh(g)``.
    """

    t: float
    sigma_e: Mrp
    omega_e: Vec3
    theta: float
    u: Vec3
    diag: ControlDiagnostics
    euler: EulerAngles
    V1: float
    V2: float
    v: float


class Metrics(BaseModel):
    """Aggregated maneuver metrics of one run.

    Attributes:
        scenario: Scenario name.
        controller: Controller name.
        theta0: Initial rotation angle (rad).
        theta_final: Final rotation angle (rad).
        theta_target: Angle the controller converges to, 0 or 2 pi (rad).
        convergence_time: First time after which the angle is within 0.05 rad
            of the target and ``|omega_e| < 1e-3`` rad/s until the end;
            ``None`` when unconverged.
        settling_time: Same with the angle predicate only.
        total_rotation: Integrated ``|theta_dot|`` (rad).
        effort: Integrated ``|u|`` (N m s).
        max_torque: Largest ``|u_i|`` (N m).
        unwound: Rotated more than pi while a shorter path existed.
    """

    scenario: str = ""
    controller: str = ""
    theta0: float
    theta_final: float
    theta_target: float
    convergence_time: Optional[float] = None
    settling_time: Optional[float] = None
    total_rotation: float
    effort: float
    max_torque: float
    unwound: bool = False

    @property
    def converged(self) -> bool:
        return self.convergence_time is not None


# Largest accepted angle-rate identity residual (rad/s) and initial-condition residual.
ANGLE_RATE_TOL = 1e-4
INITIAL_TOL = 1e-12


class MonitorReport(BaseModel):
    """Closed-loop invariant checks of one run.

    ``violations`` counts the sampled violations plus one for each residual
    above its tolerance.
    """

    lemma1_max_residual: float = 0.0
    v2_violations: int = 0
    v1_violations_after_reaching: int = 0
    theta_monotonicity_violations: int = 0
    reaching_time: float = 0.0
    initial_v_residual: float = 0.0
    initial_v2_residual: float = 0.0

    @property
    def residual_violations(self) -> int:
        return (
            int(self.lemma1_max_residual > ANGLE_RATE_TOL)
            + int(self.initial_v_residual > INITIAL_TOL)
            + int(self.initial_v2_residual > INITIAL_TOL)
        )

    @property
    def violations(self) -> int:
        return (
            self.v2_violations
            + self.v1_violations_after_reaching
            + self.theta_monotonicity_violations
            + self.residual_violations
        )

    @property
    def reached(self) -> bool:
        return math.isfinite(self.reaching_time)
