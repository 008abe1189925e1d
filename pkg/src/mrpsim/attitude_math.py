"""MRP and rotation algebra.

Skew operator, MRP kinematics matrix, compositions, direction cosine
matrices, Euler axis/angle extraction and 3-2-1 Euler angles. Every
function is pure and works on ``numpy`` float arrays of shape ``(3,)`` or
``(3, 3)``; rotation matrices are passive (they map desired-frame
components into body-frame components).
"""

import math
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from mrpsim.common.exceptions import DegenerateComposition, ZeroInitialError

Vec3 = NDArray[np.float64]
Mat3 = NDArray[np.float64]
Mrp = NDArray[np.float64]

COMPOSITION_EPS = 1e-12
ZERO_ERROR_EPS = 1e-9
GIMBAL_LOCK_EPS = 1e-9


class AxisAngle(NamedTuple):
    axis: Vec3
    angle: float


class EulerAngles(NamedTuple):
    """3-2-1 (yaw-pitch-roll) Euler angles in radians."""

    roll: float
    pitch: float
    yaw: float
    gimbal_lock: bool = False


def as_vec3(x: ArrayLike) -> Vec3:
    """Coerce ``x`` into a float64 3-vector."""
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return v


def skew(x: ArrayLike) -> Mat3:
    """Cross-product matrix: ``skew(x) @ y == np.cross(x, y)``."""
    x1, x2, x3 = as_vec3(x)
    return np.array(
        [
            [0.0, -x3, x2],
            [x3, 0.0, -x1],
            [-x2, x1, 0.0],
        ]
    )


def mrp_kinematics_matrix(sigma: ArrayLike) -> Mat3:
    """MRP kinematics matrix ``M`` with ``sigma_dot = M(sigma) @ omega``.

    Args:
        sigma: Attitude MRP.

    Returns:
        ``((1 - |sigma|^2) I + 2 sigma^x + 2 sigma sigma^T) / 4``.
    """
    s = as_vec3(sigma)
    s2 = float(s @ s)
    return ((1.0 - s2) * np.eye(3) + 2.0 * skew(s) + 2.0 * np.outer(s, s)) / 4.0


def mrp_conjugate(sigma: ArrayLike) -> Mrp:
    """Inverse rotation."""
    return -as_vec3(sigma)


def mrp_error_paper(sigma: ArrayLike, sigma_d: ArrayLike) -> Mrp:
    """Attitude error from the printed composition formula, kept verbatim.

    The printed form reproduces the initial errors of the reference
    maneuvers (``sigma = 0`` gives ``sigma_e = sigma_d``) but does not
    vanish at ``sigma == sigma_d``; use :func:`mrp_compose` for canonical
    products.

    Args:
        sigma: Body attitude.
        sigma_d: Desired attitude.

    Returns:
        The error MRP ``sigma_e``.

    Raises:
        DegenerateComposition: If the denominator magnitude is below 1e-12.
    """
    s = as_vec3(sigma)
    sd = as_vec3(sigma_d)
    s2 = float(s @ s)
    sd2 = float(sd @ sd)
    den = 1.0 + sd2 * s2 + 2.0 * float(sd @ s)
    if abs(den) < COMPOSITION_EPS:
        raise DegenerateComposition(f"error composition denominator {den:.3e} vanishes")
    return ((1.0 - s2) * sd + (1.0 - sd2) * s + 2.0 * np.cross(sd, s)) / den


def mrp_compose(sigma_b: ArrayLike, sigma_a: ArrayLike) -> Mrp:
    """Canonical MRP product: rotation ``sigma_a`` followed by ``sigma_b``.

    ``rotation_matrix(mrp_compose(b, a)) == rotation_matrix(b) @ rotation_matrix(a)``.
    No shadow-set switching is applied to the result.

    Raises:
        DegenerateComposition: If the denominator magnitude is below 1e-12.
    """
    b = as_vec3(sigma_b)
    a = as_vec3(sigma_a)
    a2 = float(a @ a)
    b2 = float(b @ b)
    den = 1.0 + a2 * b2 - 2.0 * float(a @ b)
    if abs(den) < COMPOSITION_EPS:
        raise DegenerateComposition(f"composition denominator {den:.3e} vanishes")
    return ((1.0 - a2) * b + (1.0 - b2) * a - 2.0 * np.cross(b, a)) / den


def rotation_matrix(sigma_e: ArrayLike) -> Mat3:
    """Direction cosine matrix of an MRP.

    ``I + (8 S S - 4 (1 - |sigma|^2) S) / (1 + |sigma|^2)^2`` with ``S = skew(sigma)``.
    """
    s = as_vec3(sigma_e)
    s2 = float(s @ s)
    S = skew(s)
    return np.eye(3) + (8.0 * S @ S - 4.0 * (1.0 - s2) * S) / (1.0 + s2) ** 2


def rotation_angle(sigma_e: ArrayLike, e: ArrayLike) -> float:
    """Rotation angle about a fixed Euler axis, ``4 arctan(e^T sigma_e)``."""
    return 4.0 * math.atan(float(as_vec3(e) @ as_vec3(sigma_e)))


def euler_axis_from_initial(sigma_e0: ArrayLike) -> Vec3:
    """Unit Euler axis ``sigma_e(0) / |sigma_e(0)|``.

    Raises:
        ZeroInitialError: If ``|sigma_e(0)| <= 1e-9`` (already at the goal).
    """
    s = as_vec3(sigma_e0)
    norm = float(np.linalg.norm(s))
    if norm <= ZERO_ERROR_EPS:
        raise ZeroInitialError(f"initial attitude error norm {norm:.3e} is zero")
    return s / norm


def axis_angle_from_mrp(sigma: ArrayLike) -> AxisAngle:
    """Axis and angle in ``[0, 2 pi)`` of an MRP; identity maps to axis x."""
    s = as_vec3(sigma)
    norm = float(np.linalg.norm(s))
    if norm <= ZERO_ERROR_EPS:
        return AxisAngle(np.array([1.0, 0.0, 0.0]), 0.0)
    return AxisAngle(s / norm, 4.0 * math.atan(norm))


def recover_attitude(sigma_e: ArrayLike, sigma_d: ArrayLike) -> Mrp:
    """Absolute attitude matching the printed error convention.

    Returns ``sigma_d`` at zero error and the identity when
    ``sigma_e == sigma_d``.
    """
    return mrp_compose(mrp_conjugate(sigma_e), sigma_d)


def dcm_to_euler321(C: Mat3) -> EulerAngles:
    """3-2-1 Euler angles of a direction cosine matrix.

    At gimbal lock (``|sin(pitch)| > 1 - 1e-9``) roll is pinned to zero and
    the remaining rotation is reported as yaw.
    """
    sin_pitch = float(np.clip(-C[0, 2], -1.0, 1.0))
    pitch = math.asin(sin_pitch)
    if abs(sin_pitch) > 1.0 - GIMBAL_LOCK_EPS:
        yaw = math.atan2(-C[1, 0], C[1, 1])
        return EulerAngles(roll=0.0, pitch=pitch, yaw=yaw, gimbal_lock=True)
    yaw = math.atan2(C[0, 1], C[0, 0])
    roll = math.atan2(C[1, 2], C[2, 2])
    return EulerAngles(roll=roll, pitch=pitch, yaw=yaw)


def mrp_to_euler_angles(sigma: ArrayLike) -> EulerAngles:
    """3-2-1 Euler angles of ``rotation_matrix(sigma)``."""
    return dcm_to_euler321(rotation_matrix(sigma))
