import math
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from mrpsim.common.exceptions import EmptyRecordsError, ScenarioMismatch
from mrpsim.harness.records import Metrics, SimRecord

ANGLE_TOL = 0.05
RATE_TOL = 1e-3
UNWIND_MARGIN = 0.05


def _sustained_from(t: np.ndarray, ok: np.ndarray) -> Optional[float]:
    """First time after which ``ok`` holds through the last sample."""
    if not ok[-1]:
        return None
    failing = np.flatnonzero(~ok)
    if failing.size == 0:
        return float(t[0])
    return float(t[failing[-1] + 1])


def compute_metrics(
    records: Sequence[SimRecord],
    theta_target: float,
    scenario: str = "",
    controller: str = "",
) -> Metrics:
    """Aggregate a run into maneuver metrics.

    Args:
        records: Samples of one run, in time order.
        theta_target: 0 or 2 pi.
        scenario: Scenario name carried into the result.
        controller: Controller name carried into the result.

    Raises:
        EmptyRecordsError: If ``records`` is empty.
    """
    if not records:
        raise EmptyRecordsError("cannot compute metrics of an empty run")

    t = np.array([r.t for r in records])
    theta = np.array([r.theta for r in records])
    rate = np.array([float(np.linalg.norm(r.omega_e)) for r in records])
    u = np.array([r.u for r in records])

    near = np.abs(theta - theta_target) < ANGLE_TOL
    if len(records) > 1:
        theta_dot = np.gradient(theta, t)
        total_rotation = float(np.trapezoid(np.abs(theta_dot), t))
        effort = float(np.trapezoid(np.linalg.norm(u, axis=1), t))
    else:
        total_rotation = 0.0
        effort = 0.0

    theta0 = float(theta[0])
    shorter_path = min(theta0, 2.0 * math.pi - theta0)
    unwound = (
        total_rotation > math.pi + UNWIND_MARGIN and shorter_path < total_rotation - UNWIND_MARGIN
    )

    return Metrics(
        scenario=scenario,
        controller=controller,
        theta0=theta0,
        theta_final=float(theta[-1]),
        theta_target=theta_target,
        convergence_time=_sustained_from(t, near & (rate < RATE_TOL)),
        settling_time=_sustained_from(t, near),
        total_rotation=total_rotation,
        effort=effort,
        max_torque=float(np.max(np.abs(u))),
        unwound=bool(unwound),
    )


class ComparisonRow(BaseModel):
    metric: str
    a: Optional[float] = None
    b: Optional[float] = None
    delta: Optional[float] = None
    ratio: Optional[float] = None


class Comparison(BaseModel):
    """Side-by-side metrics of two controllers on one scenario."""

    scenario: str
    controller_a: str
    controller_b: str
    rows: list[ComparisonRow]
    unwound_a: bool
    unwound_b: bool

    def row(self, metric: str) -> ComparisonRow:
        return next(r for r in self.rows if r.metric == metric)


COMPARED_METRICS = (
    "theta0",
    "theta_final",
    "convergence_time",
    "settling_time",
    "total_rotation",
    "effort",
    "max_torque",
)


def compare_runs(metrics_a: Metrics, metrics_b: Metrics) -> Comparison:
    """Per-metric deltas ``a - b`` and ratios ``a / b``.

    Missing values (unconverged times) and zero denominators leave the
    derived columns empty.

    Raises:
        ScenarioMismatch: If the metrics come from different scenarios.
    """
    if metrics_a.scenario != metrics_b.scenario:
        raise ScenarioMismatch(
            f"cannot compare scenario {metrics_a.scenario!r} with {metrics_b.scenario!r}"
        )

    rows = []
    for name in COMPARED_METRICS:
        a = getattr(metrics_a, name)
        b = getattr(metrics_b, name)
        both = a is not None and b is not None
        rows.append(
            ComparisonRow(
                metric=name,
                a=a,
                b=b,
                delta=a - b if both else None,
                ratio=a / b if both and b != 0.0 else None,
            )
        )

    return Comparison(
        scenario=metrics_a.scenario,
        controller_a=metrics_a.controller,
        controller_b=metrics_b.controller,
        rows=rows,
        unwound_a=metrics_a.unwound,
        unwound_b=metrics_b.unwound,
    )
