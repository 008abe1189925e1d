"""Baseline sliding mode controller used for comparison.

Sliding variable ``s_b = omega_e - lambda sigma_e`` with a saturated
reaching term:

    u = omega_e^x J omega_e + lambda J M(sigma_e) omega_e - k J sat(s_b / epsilon)

On the surface the error MRP contracts toward zero regardless of the
initial rotation angle, so maneuvers above pi unwind.
"""

from dataclasses import replace
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field

from mrpsim.attitude_math import Vec3, as_vec3, mrp_kinematics_matrix, rotation_angle
from mrpsim.common.exceptions import NonFiniteControl
from mrpsim.controllers.base import AttitudeController, ControlDiagnostics, ControllerKind
from mrpsim.dynamics import BodyErrorState, InertiaMatrix


class SmcParams(BaseModel):
    """Baseline gains: reaching gain ``k``, surface slope ``lambda``, layer ``epsilon``."""

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    k: float = Field(default=1.5, gt=0.0)
    lambda_: float = Field(default=-0.5, lt=0.0, alias="lambda")
    epsilon: float = Field(default=0.5, gt=0.0, alias="eps")


def smc_control(
    state: BodyErrorState,
    params: SmcParams,
    J: InertiaMatrix,
    e: Optional[ArrayLike] = None,
) -> tuple[Vec3, ControlDiagnostics]:
    """Evaluate the baseline control torque.

    Args:
        state: Error state.
        params: Baseline gains.
        J: Spacecraft inertia.
        e: Euler axis used only to report ``theta`` in the diagnostics.

    Returns:
        The torque (N m) and diagnostics with ``s``, ``u_eq`` and ``u_n``
        filled; the unwinding-free scalars are zero.

    Raises:
        NonFiniteControl: If any torque component is non-finite.
    """
    sigma, omega = state.sigma_e, state.omega_e
    Jm = J.J
    lam = params.lambda_

    s_b = omega - lam * sigma
    sat = np.clip(s_b / params.epsilon, -1.0, 1.0)
    u_eq = np.cross(omega, Jm @ omega) + lam * (Jm @ (mrp_kinematics_matrix(sigma) @ omega))
    u_n = -params.k * (Jm @ sat)
    u = u_eq + u_n
    if not np.all(np.isfinite(u)):
        raise NonFiniteControl("baseline law produced a non-finite torque")

    theta = rotation_angle(sigma, as_vec3(e)) if e is not None else 0.0
    return u, replace(ControlDiagnostics.idle(theta), s=s_b, u_eq=u_eq, u_n=u_n)


class SmcController(AttitudeController):
    """Baseline controller bound to a maneuver's Euler axis (for reporting)."""

    kind = ControllerKind.SMC

    def __init__(self, params: SmcParams, J: InertiaMatrix, e: Optional[ArrayLike] = None):
        super().__init__(J)
        self.params = params
        self.axis = None if e is None else as_vec3(e)

    def control(self, state: BodyErrorState) -> tuple[Vec3, ControlDiagnostics]:
        return smc_control(state, self.params, self.J, self.axis)
