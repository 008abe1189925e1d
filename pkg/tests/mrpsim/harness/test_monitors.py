import math
from dataclasses import replace

import numpy as np
import pytest

from mrpsim.attitude_math import EulerAngles
from mrpsim.common.exceptions import EmptyRecordsError
from mrpsim.controllers.base import ControlDiagnostics, ControllerKind
from mrpsim.controllers.ufsmc import UfsmcParams
from mrpsim.harness.monitors import monitor_invariants
from mrpsim.harness.records import ANGLE_RATE_TOL, MonitorReport, SimRecord

PARAMS = UfsmcParams()
AXIS = np.array([0.0, 0.0, 1.0])


def record(t, theta, s=(0.0, 0.0, 0.0), omega=(0.0, 0.0, 0.0), V1=0.0, h=0.0) -> SimRecord:
    s = np.asarray(s, dtype=float)
    diag = replace(ControlDiagnostics.idle(theta), s=s, h=h)
    return SimRecord(
        t=t,
        sigma_e=AXIS * math.tan(theta / 4.0),
        omega_e=np.asarray(omega, dtype=float),
        theta=theta,
        u=np.zeros(3),
        diag=diag,
        euler=EulerAngles(0.0, 0.0, 0.0),
        V1=V1,
        V2=0.5 * float(s @ s),
        v=float(AXIS @ s),
    )


class TestMonitorInvariants:
    def test_empty(self):
        with pytest.raises(EmptyRecordsError):
            monitor_invariants([], PARAMS)

    def test_single_record(self):
        report = monitor_invariants([record(0.0, 1.0)], PARAMS)
        assert report == MonitorReport()
        assert report.reached

    def test_consistent_rotation(self):
        rate = -0.1
        records = [record(0.1 * k, 1.0 + rate * 0.1 * k, omega=rate * AXIS) for k in range(11)]
        report = monitor_invariants(records, PARAMS)

        assert report.lemma1_max_residual == pytest.approx(0.0, abs=1e-12)
        assert report.theta_monotonicity_violations == 0
        assert report.violations == 0

    def test_angle_rate_residual(self):
        records = [record(0.0, 1.0), record(0.1, 0.9, omega=(0.0, 0.0, -0.5))]
        report = monitor_invariants(records, PARAMS)
        # finite-difference rate -1.0, midpoint rate -0.25
        assert report.lemma1_max_residual == pytest.approx(0.75)
        assert report.residual_violations == 1
        assert report.violations == 1

    def test_reaching_phase(self):
        records = [
            record(0.0, 1.0, s=(1.0, 0.0, 0.0)),
            record(0.1, 1.0, s=(1.2, 0.0, 0.0)),
            record(0.2, 1.0, s=(0.1, 0.0, 0.0)),
        ]
        report = monitor_invariants(records, PARAMS)

        assert report.v2_violations == 1
        assert report.reaching_time == pytest.approx(0.2)

    def test_never_reaches(self):
        records = [record(0.1 * k, 1.0, s=(1.0, 0.0, 0.0)) for k in range(3)]
        report = monitor_invariants(records, PARAMS)

        assert report.reaching_time == math.inf
        assert not report.reached
        assert report.v1_violations_after_reaching == 0

    def test_sliding_phase(self):
        records = [
            record(0.0, 1.0, V1=0.3),
            record(0.1, 1.0, V1=0.2),
            record(0.2, 1.0, V1=0.25),
        ]
        report = monitor_invariants(records, PARAMS)

        assert report.reaching_time == 0.0
        assert report.v1_violations_after_reaching == 1

    def test_monotonicity_below_half_turn(self):
        thetas = [1.0, 0.8, 0.81, 0.9, 0.5]
        records = [record(0.1 * k, theta) for k, theta in enumerate(thetas)]
        assert monitor_invariants(records, PARAMS).theta_monotonicity_violations == 2

    def test_monotonicity_above_half_turn(self):
        thetas = [3.5, 3.6, 3.59995, 3.4, 4.0]
        records = [record(0.1 * k, theta) for k, theta in enumerate(thetas)]
        assert monitor_invariants(records, PARAMS).theta_monotonicity_violations == 1

    @pytest.mark.parametrize(
        "field, value",
        [
            ("lemma1_max_residual", 2e-4),
            ("initial_v_residual", 1e-9),
            ("initial_v2_residual", 1e-9),
        ],
    )
    def test_residuals_above_tolerance_count(self, field, value):
        report = MonitorReport(**{field: value})
        assert report.residual_violations == 1
        assert report.violations == 1

    def test_residuals_within_tolerance(self):
        report = MonitorReport(
            lemma1_max_residual=ANGLE_RATE_TOL, initial_v_residual=1e-13, initial_v2_residual=0.0
        )
        assert report.violations == 0

    def test_initial_residuals(self):
        s = (0.0, 0.0, -0.4)
        records = [record(0.0, 1.0, s=s, h=0.2), record(0.1, 1.0, s=s, h=0.2)]
        report = monitor_invariants(records, PARAMS)

        assert report.initial_v_residual == pytest.approx(0.0, abs=1e-15)
        assert report.initial_v2_residual == pytest.approx(0.0, abs=1e-15)


@pytest.mark.slow
class TestClosedLoop:
    @pytest.mark.parametrize("scenario", ["A", "B"])
    def test_initial_state_and_reaching(self, closed_loop, scenario):
        report = monitor_invariants(closed_loop(scenario, ControllerKind.UFSMC), PARAMS)

        assert report.initial_v_residual < 1e-12
        assert report.initial_v2_residual < 1e-12
        assert report.reaching_time < 5.0
        assert report.v2_violations == 0

    @pytest.mark.parametrize("scenario", ["A", "B"])
    def test_sliding_guarantees(self, closed_loop, scenario):
        report = monitor_invariants(closed_loop(scenario, ControllerKind.UFSMC), PARAMS)

        assert report.lemma1_max_residual < ANGLE_RATE_TOL
        assert report.v1_violations_after_reaching == 0
        assert report.theta_monotonicity_violations == 0
        assert report.violations == 0
