"""Rest-to-rest attitude maneuver error dynamics and fixed-step integration.

The error state evolves as

    sigma_e_dot = M(sigma_e) omega_e
    J omega_e_dot = -omega_e^x J omega_e + u + d

and is advanced with classical fourth-order Runge-Kutta, holding the
control torque over each step and re-evaluating the disturbance at the
stage times.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, field_validator, model_validator

from mrpsim.attitude_math import Mat3, Mrp, Vec3, as_vec3, mrp_kinematics_matrix
from mrpsim.common.exceptions import NonFiniteState

SYMMETRY_TOL = 1e-10
DEFAULT_DT = 1e-3
DEFAULT_DURATION = 20.0

Row3 = tuple[float, float, float]


class InertiaMatrix(BaseModel):
    """Spacecraft inertia (kg m^2) with its inverse cached at construction.

    Attributes:
        matrix: Row-major 3x3 symmetric positive definite inertia.
    """

    model_config = ConfigDict(frozen=True)

    matrix: tuple[Row3, Row3, Row3]

    _J: Mat3 = PrivateAttr()
    _J_inv: Mat3 = PrivateAttr()
    _lambda_min_inv: float = PrivateAttr()

    @field_validator("matrix")
    @classmethod
    def validate_matrix(cls, v):
        J = np.asarray(v, dtype=np.float64)
        if not np.all(np.isfinite(J)):
            raise ValueError("inertia entries must be finite")
        scale = max(1.0, float(np.max(np.abs(J))))
        if np.max(np.abs(J - J.T)) > SYMMETRY_TOL * scale:
            raise ValueError("inertia matrix must be symmetric")
        if np.min(np.linalg.eigvalsh(J)) <= 0.0:
            raise ValueError("inertia matrix must be positive definite")
        return v

    def model_post_init(self, __context) -> None:
        J = np.asarray(self.matrix, dtype=np.float64)
        J_inv = np.linalg.inv(J)
        self._J = J
        self._J_inv = J_inv
        self._lambda_min_inv = float(np.min(np.linalg.eigvalsh((J_inv + J_inv.T) / 2.0)))

    # Cached arrays are derived from ``matrix``; compare and hash on it alone.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InertiaMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    @classmethod
    def diagonal(cls, j1: float, j2: float, j3: float) -> "InertiaMatrix":
        """Build a principal-axis inertia ``diag(j1, j2, j3)``."""
        return cls(matrix=((j1, 0.0, 0.0), (0.0, j2, 0.0), (0.0, 0.0, j3)))

    @property
    def J(self) -> Mat3:
        return self._J

    @property
    def inverse(self) -> Mat3:
        return self._J_inv

    @property
    def lambda_min_inv(self) -> float:
        """Minimum eigenvalue of ``J^-1`` (1/(kg m^2))."""
        return self._lambda_min_inv


def spacecraft_inertia() -> InertiaMatrix:
    """Reference rigid spacecraft, ``diag(114, 86, 87)`` kg m^2."""
    return InertiaMatrix.diagonal(114.0, 86.0, 87.0)


class WaveKind(str, Enum):
    SIN = "sin"
    COS = "cos"


class AxisShape(BaseModel):
    """Per-axis disturbance shape ``gain * kind(frequency * t)``."""

    model_config = ConfigDict(frozen=True)

    kind: WaveKind
    gain: float = 1.0


def _reference_axes() -> tuple[AxisShape, AxisShape, AxisShape]:
    return (
        AxisShape(kind=WaveKind.SIN, gain=1.0),
        AxisShape(kind=WaveKind.SIN, gain=0.5),
        AxisShape(kind=WaveKind.COS, gain=-1.0),
    )


class DisturbanceModel(BaseModel):
    """Bounded sinusoidal disturbance torque (N m).

    The default is ``1e-2 [sin(0.05 t), 0.5 sin(0.05 t), -cos(0.05 t)]``.
    """

    model_config = ConfigDict(frozen=True)

    scale: float = Field(default=1e-2, ge=0.0, description="Amplitude scale (N m)")
    frequency: float = Field(default=0.05, ge=0.0, description="Angular frequency (rad/s)")
    axes: tuple[AxisShape, AxisShape, AxisShape] = Field(default_factory=_reference_axes)

    @classmethod
    def none(cls) -> "DisturbanceModel":
        """Disturbance-free model."""
        return cls(scale=0.0)

    @property
    def bound(self) -> float:
        """Declared upper bound on ``|d(t)|`` over all t."""
        return self.scale * math.sqrt(sum(axis.gain**2 for axis in self.axes))

    def at(self, t: float) -> Vec3:
        """Disturbance torque at time ``t`` (s)."""
        phase = self.frequency * t
        s, c = math.sin(phase), math.cos(phase)
        return self.scale * np.array(
            [axis.gain * (s if axis.kind == WaveKind.SIN else c) for axis in self.axes]
        )


DEFAULT_DISTURBANCE = DisturbanceModel()


def disturbance_at(t: float, model: DisturbanceModel = DEFAULT_DISTURBANCE) -> Vec3:
    """Disturbance torque (N m) at time ``t``; the reference model by default."""
    return model.at(t)


class StepConfig(BaseModel):
    """Fixed integration step and run duration in seconds."""

    model_config = ConfigDict(frozen=True)

    dt: float = Field(default=DEFAULT_DT, gt=0.0, le=0.01)
    duration: float = Field(default=DEFAULT_DURATION, gt=0.0)

    @model_validator(mode="after")
    def validate_integral(self) -> "StepConfig":
        n = round(self.duration / self.dt)
        if n < 1 or abs(n * self.dt - self.duration) > 1e-9 * max(1.0, self.duration):
            raise ValueError(
                f"duration {self.duration} is not an integral multiple of dt {self.dt}"
            )
        return self

    @property
    def steps(self) -> int:
        return round(self.duration / self.dt)


@dataclass(frozen=True, slots=True)
class BodyErrorState:
    """Attitude error MRP and angular velocity error (rad/s)."""

    sigma_e: Mrp
    omega_e: Vec3

    @classmethod
    def of(cls, sigma_e: ArrayLike, omega_e: ArrayLike) -> "BodyErrorState":
        return cls(as_vec3(sigma_e).copy(), as_vec3(omega_e).copy())

    @classmethod
    def rest(cls) -> "BodyErrorState":
        return cls(np.zeros(3), np.zeros(3))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.sigma_e)) and np.all(np.isfinite(self.omega_e)))


def error_dynamics_rhs(
    state: BodyErrorState, u: Vec3, d: Vec3, J: InertiaMatrix
) -> tuple[Vec3, Vec3]:
    """Time derivatives ``(sigma_e_dot, omega_e_dot)`` of the error state."""
    omega = state.omega_e
    sigma_dot = mrp_kinematics_matrix(state.sigma_e) @ omega
    omega_dot = J.inverse @ (-np.cross(omega, J.J @ omega) + u + d)
    return sigma_dot, omega_dot


def momentum_magnitude(omega_e: ArrayLike, J: InertiaMatrix) -> float:
    """Angular momentum magnitude ``|J omega_e|``."""
    return float(np.linalg.norm(J.J @ as_vec3(omega_e)))


DisturbanceFn = Callable[[float], Vec3]


def _disturbance_fn(disturbance: Optional[DisturbanceModel | DisturbanceFn]) -> DisturbanceFn:
    if disturbance is None:
        return lambda t: np.zeros(3)
    if isinstance(disturbance, DisturbanceModel):
        return disturbance.at
    return disturbance


def rk4_step(
    state: BodyErrorState,
    u: Vec3,
    t: float,
    dt: float,
    J: InertiaMatrix,
    disturbance: Optional[DisturbanceModel | DisturbanceFn] = None,
) -> BodyErrorState:
    """Advance the error state by one classical Runge-Kutta step.

    Args:
        state: State at time ``t``.
        u: Control torque held constant over the step (zero-order hold).
        t: Step start time (s).
        dt: Step size (s), positive.
        J: Spacecraft inertia.
        disturbance: Disturbance model or callable of time; ``None`` for zero.

    Returns:
        The state at ``t + dt``.

    Raises:
        ValueError: If ``dt`` is not positive.
        NonFiniteState: If any component of the new state is non-finite.
    """
    if dt <= 0.0:
        raise ValueError(f"step size must be positive, got {dt}")
    d_of = _disturbance_fn(disturbance)
    half = 0.5 * dt
    s0, w0 = state.sigma_e, state.omega_e

    d_mid = d_of(t + half)
    k1s, k1w = error_dynamics_rhs(state, u, d_of(t), J)
    k2s, k2w = error_dynamics_rhs(BodyErrorState(s0 + half * k1s, w0 + half * k1w), u, d_mid, J)
    k3s, k3w = error_dynamics_rhs(BodyErrorState(s0 + half * k2s, w0 + half * k2w), u, d_mid, J)
    k4s, k4w = error_dynamics_rhs(BodyErrorState(s0 + dt * k3s, w0 + dt * k3w), u, d_of(t + dt), J)

    new = BodyErrorState(
        s0 + (dt / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s),
        w0 + (dt / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
    )
    if not new.is_finite():
        raise NonFiniteState("integration produced a non-finite state", t=t + dt)
    return new


def integrate(
    state: BodyErrorState,
    u_of: Callable[[float, BodyErrorState], Vec3],
    t0: float,
    dt: float,
    steps: int,
    J: InertiaMatrix,
    disturbance: Optional[DisturbanceModel | DisturbanceFn] = None,
) -> BodyErrorState:
    """Open-loop fixed-step integration with ``u_of(t, state)`` sampled per step."""
    t = t0
    for _ in range(steps):
        state = rk4_step(state, u_of(t, state), t, dt, J, disturbance)
        t += dt
    return state
