"""Runtime checks of the closed-loop guarantees.

* angle-rate identity: the finite-difference rate of theta matches
  ``e^T omega_e`` at the step midpoint;
* reaching phase: ``V2 = s^T s / 2`` does not grow while ``|s|_inf >= epsilon1``;
* sliding phase: ``V1`` does not grow after the reaching time;
* rotation direction: theta heads monotonically toward the nearer of 0 and
  2 pi, up to a chattering band.
"""

import math
from typing import Sequence

import numpy as np

from mrpsim.common.exceptions import EmptyRecordsError
from mrpsim.controllers.ufsmc import UfsmcParams
from mrpsim.harness.records import MonitorReport, SimRecord

V2_TOL = 1e-9
V1_TOL = 1e-6
THETA_TOL = 1e-3


def _reaching_time(t: np.ndarray, s_inf: np.ndarray, epsilon1: float) -> float:
    inside = s_inf < epsilon1
    if not inside[-1]:
        return math.inf
    outside = np.flatnonzero(~inside)
    return float(t[0]) if outside.size == 0 else float(t[outside[-1] + 1])


def _monotonicity_violations(theta: np.ndarray, decreasing: bool) -> int:
    if decreasing:
        best = np.minimum.accumulate(theta)
        excess = theta[1:] - best[:-1]
    else:
        best = np.maximum.accumulate(theta)
        excess = best[:-1] - theta[1:]
    return int(np.count_nonzero(excess > THETA_TOL))


def monitor_invariants(records: Sequence[SimRecord], params: UfsmcParams) -> MonitorReport:
    """Check one run against the closed-loop guarantees.

    Args:
        records: Samples of a single run.
        params: Unwinding-free gains the run used (``alpha``, ``epsilon1``).

    Returns:
        Residuals and violation counts; ``reaching_time`` is ``inf`` when
        ``|s|_inf`` is still outside the boundary layer at the end.

    Raises:
        EmptyRecordsError: If ``records`` is empty.
    """
    if not records:
        raise EmptyRecordsError("cannot monitor an empty run")

    first = records[0]
    sigma0_norm = float(np.linalg.norm(first.sigma_e))
    if len(records) == 1 or sigma0_norm == 0.0:
        return MonitorReport()

    e = first.sigma_e / sigma0_norm
    t = np.array([r.t for r in records])
    theta = np.array([r.theta for r in records])
    omega = np.array([r.omega_e for r in records])
    s_inf = np.array([float(np.max(np.abs(r.diag.s))) for r in records])
    V1 = np.array([r.V1 for r in records])
    V2 = np.array([r.V2 for r in records])

    dt = np.diff(t)
    midpoint_rate = 0.5 * (omega[:-1] + omega[1:]) @ e
    lemma1 = float(np.max(np.abs(np.diff(theta) / dt - midpoint_rate)))

    reaching = s_inf[:-1] >= params.epsilon1
    v2_violations = int(np.count_nonzero(reaching & (np.diff(V2) > V2_TOL)))

    reaching_time = _reaching_time(t, s_inf, params.epsilon1)
    sliding = t[:-1] >= reaching_time
    v1_violations = int(np.count_nonzero(sliding & (np.diff(V1) > V1_TOL)))

    h0 = first.diag.h
    return MonitorReport(
        lemma1_max_residual=lemma1,
        v2_violations=v2_violations,
        v1_violations_after_reaching=v1_violations,
        theta_monotonicity_violations=_monotonicity_violations(theta, theta[0] < math.pi),
        reaching_time=reaching_time,
        initial_v_residual=abs(first.v + params.alpha * h0),
        initial_v2_residual=abs(first.V2 - 0.5 * first.v**2),
    )
