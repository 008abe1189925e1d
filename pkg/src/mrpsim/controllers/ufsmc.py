"""Unwinding-free sliding mode control over MRPs.

The switching function ``s = omega_e - alpha rho(sigma_e) sigma_e`` uses a
hyperbolic-sine gain ``rho`` whose sign flips at a rotation angle of pi, so
the sliding surface steers the body toward whichever of 0 or 2 pi is
closer. The control is

    u = omega_e^x J omega_e + alpha J (rho_dot sigma_e + rho sigma_e_dot)
        - (gamma1 + gamma2(t)) l(s)

with ``l`` a smoothed sign function and ``gamma2`` a dynamic gain that
dominates the surface's own motion.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field

from mrpsim.attitude_math import (
    ZERO_ERROR_EPS,
    Mrp,
    Vec3,
    as_vec3,
    euler_axis_from_initial,
    mrp_kinematics_matrix,
    rotation_angle,
)
from mrpsim.common.exceptions import ConfigError, NonFiniteControl
from mrpsim.controllers.base import AttitudeController, ControlDiagnostics, ControllerKind
from mrpsim.dynamics import BodyErrorState, InertiaMatrix

GAMMA1_MARGIN = 1.2
TAN_ONE = math.tan(1.0)


class UfsmcParams(BaseModel):
    """Gains of the unwinding-free law.

    Attributes:
        alpha: Sliding gain (1/s).
        gamma1: Constant switching gain (N m), at least the disturbance bound.
        epsilon1: Boundary-layer half-width on ``s``.
        epsilon2: MRP singularity-guard parameter; components are held
            within ``1/epsilon2``.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    alpha: float = Field(default=2.0, gt=0.0)
    gamma1: float = Field(default=30.0, gt=0.0)
    epsilon1: float = Field(default=0.5, gt=0.0, alias="eps1")
    epsilon2: float = Field(default=1e-4, gt=0.0, alias="eps2")


@dataclass(frozen=True, slots=True)
class UfsmcMemory:
    """Euler axis frozen from the initial error."""

    e: Vec3

    @classmethod
    def from_initial(cls, sigma_e0: ArrayLike) -> "UfsmcMemory":
        """Fix the axis ``sigma_e(0) / |sigma_e(0)|``.

        Raises:
            ZeroInitialError: If the initial error is zero.
        """
        e = euler_axis_from_initial(sigma_e0)
        e.setflags(write=False)
        return cls(e)


def g_of(sigma_e: ArrayLike, e: ArrayLike) -> float:
    """``arctan(e^T sigma_e) - pi/4``; equals ``theta/4 - pi/4`` on axis."""
    return math.atan(float(as_vec3(e) @ as_vec3(sigma_e))) - math.pi / 4.0


def rho_of(sigma_e: ArrayLike, e: ArrayLike) -> float:
    """Surface gain ``sinh(g) / (1 + |sigma_e|^2)``, negative below pi."""
    s = as_vec3(sigma_e)
    return math.sinh(g_of(s, e)) / (1.0 + float(s @ s))


def switching_function(state: BodyErrorState, e: ArrayLike, alpha: float) -> Vec3:
    """``s = omega_e - alpha rho(sigma_e) sigma_e``."""
    return state.omega_e - alpha * rho_of(state.sigma_e, e) * state.sigma_e


def rho_dot_analytic(state: BodyErrorState, e: ArrayLike, sigma_e_dot: ArrayLike) -> float:
    """Chain-rule time derivative of :func:`rho_of`.

    Args:
        state: Current error state.
        e: Frozen unit Euler axis.
        sigma_e_dot: ``M(sigma_e) omega_e``.

    Returns:
        ``rho_dot`` in 1/s.
    """
    e = as_vec3(e)
    sigma = state.sigma_e
    sigma_dot = as_vec3(sigma_e_dot)
    p = float(e @ sigma)
    g = math.atan(p) - math.pi / 4.0
    g_dot = float(e @ sigma_dot) / (1.0 + p * p)
    q = 1.0 + float(sigma @ sigma)
    return (math.cosh(g) * g_dot * q - 2.0 * math.sinh(g) * float(sigma @ sigma_dot)) / (q * q)


def h_of(sigma_e: ArrayLike, e: ArrayLike) -> float:
    """``h = rho(sigma_e) |sigma_e|``."""
    s = as_vec3(sigma_e)
    return rho_of(s, e) * float(np.linalg.norm(s))


def h_dot_analytic(state: BodyErrorState, e: ArrayLike, sigma_e_dot: ArrayLike) -> float:
    """``h_dot = rho_dot |sigma_e| + rho sigma_e^T sigma_e_dot / |sigma_e|``.

    The second term is dropped when ``|sigma_e| < 1e-9``.
    """
    sigma = state.sigma_e
    sigma_dot = as_vec3(sigma_e_dot)
    norm = float(np.linalg.norm(sigma))
    h_dot = rho_dot_analytic(state, e, sigma_dot) * norm
    if norm >= ZERO_ERROR_EPS:
        h_dot += rho_of(sigma, e) * float(sigma @ sigma_dot) / norm
    return h_dot


def switching_gain(h_dot: float, alpha: float, J: InertiaMatrix) -> float:
    """Dynamic switching gain ``alpha |h_dot| / lambda_min(J^-1)`` (N m)."""
    return alpha * abs(h_dot) / J.lambda_min_inv


def gamma2_of(state: BodyErrorState, e: ArrayLike, alpha: float, J: InertiaMatrix) -> float:
    """Dynamic switching gain at ``state``."""
    sigma_dot = mrp_kinematics_matrix(state.sigma_e) @ state.omega_e
    return switching_gain(h_dot_analytic(state, e, sigma_dot), alpha, J)


def smooth_sign(s: ArrayLike, epsilon1: float) -> Vec3:
    """Componentwise boundary-layer sign.

    ``sgn(s_i)`` outside ``|s_i| < epsilon1`` and ``arctan(s_i tan(1) / epsilon1)``
    inside; both branches meet at magnitude 1 on the boundary.
    """
    s = as_vec3(s)
    return np.where(np.abs(s) >= epsilon1, np.sign(s), np.arctan(s * TAN_ONE / epsilon1))


def clamp_sigma(sigma_e: ArrayLike, epsilon2: float) -> Mrp:
    """Replace components with ``|sigma_i| >= 1/epsilon2`` by ``sgn(sigma_i)/epsilon2``."""
    s = as_vec3(sigma_e)
    limit = 1.0 / epsilon2
    return np.where(np.abs(s) >= limit, np.sign(s) * limit, s)


def ufsmc_control(
    state: BodyErrorState,
    params: UfsmcParams,
    mem: UfsmcMemory,
    J: InertiaMatrix,
    sign_control: bool = False,
) -> tuple[Vec3, ControlDiagnostics]:
    """Evaluate the unwinding-free control torque.

    Args:
        state: Error state, already passed through :func:`clamp_sigma`.
        params: Controller gains.
        mem: Frozen Euler axis.
        J: Spacecraft inertia.
        sign_control: Use the exact ``sgn`` switching term (``sgn(0) = 0``)
            instead of the boundary-layer surrogate.

    Returns:
        The torque ``u`` (N m) and the diagnostics of this evaluation.

    Raises:
        NonFiniteControl: If any torque component is non-finite.
    """
    e = mem.e
    alpha = params.alpha
    sigma, omega = state.sigma_e, state.omega_e
    Jm = J.J

    sigma_dot = mrp_kinematics_matrix(sigma) @ omega
    g = g_of(sigma, e)
    rho = rho_of(sigma, e)
    rho_dot = rho_dot_analytic(state, e, sigma_dot)
    h = h_of(sigma, e)
    h_dot = h_dot_analytic(state, e, sigma_dot)
    gamma2 = switching_gain(h_dot, alpha, J)

    s = omega - alpha * rho * sigma
    switch = np.sign(s) if sign_control else smooth_sign(s, params.epsilon1)

    u_eq = np.cross(omega, Jm @ omega) + alpha * (Jm @ (rho_dot * sigma + rho * sigma_dot))
    u_n = -(params.gamma1 + gamma2) * switch
    u = u_eq + u_n
    if not np.all(np.isfinite(u)):
        raise NonFiniteControl("unwinding-free law produced a non-finite torque")

    diag = ControlDiagnostics(
        s=s,
        g=g,
        rho=rho,
        rho_dot=rho_dot,
        h=h,
        h_dot=h_dot,
        gamma2=gamma2,
        u_eq=u_eq,
        u_n=u_n,
        theta=rotation_angle(sigma, e),
    )
    return u, diag


class UfsmcController(AttitudeController):
    """Unwinding-free sliding mode controller bound to one maneuver.

    Args:
        params: Controller gains.
        J: Spacecraft inertia.
        sigma_e0: Initial error attitude fixing the Euler axis.
        disturbance_bound: Declared ``max |d(t)|``; ``gamma1`` must exceed it
            by the 1.2 margin.
        sign_control: Evaluate the unsmoothed law.

    Raises:
        ConfigError: If ``gamma1`` is below the margin.
        ZeroInitialError: If ``sigma_e0`` is zero.
    """

    kind = ControllerKind.UFSMC

    def __init__(
        self,
        params: UfsmcParams,
        J: InertiaMatrix,
        sigma_e0: ArrayLike,
        disturbance_bound: Optional[float] = None,
        sign_control: bool = False,
    ):
        super().__init__(J)
        if disturbance_bound is not None and params.gamma1 < GAMMA1_MARGIN * disturbance_bound:
            raise ConfigError(
                f"gamma1={params.gamma1} is below {GAMMA1_MARGIN} x disturbance bound "
                f"{disturbance_bound:.6g}",
                "ufsmc.gamma1",
            )
        self.params = params
        self.memory = UfsmcMemory.from_initial(sigma_e0)
        self.sign_control = sign_control

    @property
    def axis(self) -> Vec3:
        return self.memory.e

    def control(self, state: BodyErrorState) -> tuple[Vec3, ControlDiagnostics]:
        return ufsmc_control(state, self.params, self.memory, self.J, self.sign_control)
