"""Closed-loop simulation driver.

Each step guards the error attitude, evaluates the controller once, records
the sample and advances the plant with the torque held over the step.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike

from mrpsim.attitude_math import (
    ZERO_ERROR_EPS,
    Vec3,
    as_vec3,
    euler_axis_from_initial,
    mrp_kinematics_matrix,
    mrp_to_euler_angles,
    recover_attitude,
)
from mrpsim.common.exceptions import NonFiniteControl, NumericalError
from mrpsim.controllers.base import AttitudeController, ControlDiagnostics, ControllerKind
from mrpsim.controllers.baseline_smc import SmcController, SmcParams
from mrpsim.controllers.ufsmc import UfsmcController, UfsmcParams, clamp_sigma, g_of
from mrpsim.dynamics import BodyErrorState, rk4_step
from mrpsim.harness.records import SimRecord
from mrpsim.harness.scenario import Scenario, SimulationConfig
from mrpsim.logger import Logger, default_logger

KAPPA = math.cosh(math.pi / 4.0)


def theta_rate(state: BodyErrorState, e: ArrayLike) -> float:
    """Exact rotation-angle rate ``4 e^T sigma_dot / (1 + (e^T sigma)^2)`` (rad/s)."""
    e = as_vec3(e)
    p = float(e @ state.sigma_e)
    sigma_dot = mrp_kinematics_matrix(state.sigma_e) @ state.omega_e
    return 4.0 * float(e @ sigma_dot) / (1.0 + p * p)


def sliding_theta_rate(theta: float, alpha: float) -> float:
    """Rotation-angle rate on the sliding surface for an on-axis state."""
    quarter = theta / 4.0
    return alpha * math.sinh(quarter - math.pi / 4.0) * math.cos(quarter) ** 2 * math.tan(quarter)


def _make_record(
    t: float,
    state: BodyErrorState,
    u: Vec3,
    diag: ControlDiagnostics,
    e: Vec3,
    sigma_d: Vec3,
) -> SimRecord:
    s = diag.s
    return SimRecord(
        t=t,
        sigma_e=state.sigma_e,
        omega_e=state.omega_e,
        theta=diag.theta,
        u=u,
        diag=diag,
        euler=mrp_to_euler_angles(recover_attitude(state.sigma_e, sigma_d)),
        V1=KAPPA - math.cosh(g_of(state.sigma_e, e)),
        V2=0.5 * float(s @ s),
        v=float(e @ s),
    )


def _trivial_run(scenario: Scenario, sigma_e0: Vec3) -> list[SimRecord]:
    zero = np.zeros(3)
    state = BodyErrorState.of(sigma_e0, scenario.omega0)
    return [
        SimRecord(
            t=0.0,
            sigma_e=state.sigma_e,
            omega_e=state.omega_e,
            theta=0.0,
            u=zero,
            diag=ControlDiagnostics.idle(),
            euler=mrp_to_euler_angles(np.array(scenario.sigma_d)),
            V1=0.0,
            V2=0.0,
            v=0.0,
        )
    ]


def build_controller(
    kind: ControllerKind | str,
    scenario: Scenario,
    ufsmc: UfsmcParams,
    smc: SmcParams,
    sign_control: bool = False,
) -> AttitudeController:
    """Bind a controller of ``kind`` to the scenario's initial error."""
    sigma_e0 = scenario.sigma_e0
    if ControllerKind(kind) == ControllerKind.UFSMC:
        return UfsmcController(
            ufsmc,
            scenario.J,
            sigma_e0,
            disturbance_bound=scenario.disturbance.bound,
            sign_control=sign_control,
        )
    return SmcController(smc, scenario.J, euler_axis_from_initial(sigma_e0))


def run_simulation(
    scenario: Scenario,
    kind: ControllerKind | str,
    ufsmc: Optional[UfsmcParams] = None,
    smc: Optional[SmcParams] = None,
    sign_control: bool = False,
    logger: Optional[Logger] = None,
) -> list[SimRecord]:
    """Simulate one maneuver under one controller.

    Both controllers see the error attitude through the singularity guard
    of the unwinding-free gains.

    Args:
        scenario: Maneuver to fly.
        kind: Controller selector.
        ufsmc: Unwinding-free gains; reference values when omitted.
        smc: Baseline gains; reference values when omitted.
        sign_control: Use the unsmoothed switching term in the unwinding-free law.
        logger: Event logger; the configured default when omitted.

    Returns:
        ``duration/dt + 1`` records, or a single record when the maneuver
        starts at its goal.

    Raises:
        ConfigError: If the unwinding-free ``gamma1`` is below the disturbance margin.
        NonFiniteState: If the plant state blows up.
        NonFiniteControl: If a controller produces a non-finite torque.
    """
    kind = ControllerKind(kind)
    ufsmc = ufsmc or UfsmcParams()
    smc = smc or SmcParams()
    log = (logger or default_logger()).bind(scenario=scenario.name, controller=kind.value)

    sigma_e0 = scenario.sigma_e0
    if float(np.linalg.norm(sigma_e0)) <= ZERO_ERROR_EPS:
        log.info("Maneuver starts at its goal; skipping control")
        return _trivial_run(scenario, sigma_e0)

    controller = build_controller(kind, scenario, ufsmc, smc, sign_control)
    e = euler_axis_from_initial(sigma_e0)
    sigma_d = np.array(scenario.sigma_d)
    J, disturbance = scenario.J, scenario.disturbance
    dt, steps = scenario.step.dt, scenario.step.steps

    log.debug("Run started", {"steps": steps, "dt": dt})

    state = BodyErrorState.of(sigma_e0, scenario.omega0)
    records: list[SimRecord] = []
    t = 0.0
    try:
        for k in range(steps + 1):
            t = k * dt
            state = BodyErrorState(clamp_sigma(state.sigma_e, ufsmc.epsilon2), state.omega_e)
            try:
                u, diag = controller.control(state)
            except NonFiniteControl as exc:
                raise NonFiniteControl(str(exc), t=t) from exc
            records.append(_make_record(t, state, u, diag, e, sigma_d))
            if k < steps:
                state = rk4_step(state, u, t, dt, J, disturbance)
    except NumericalError as exc:
        log.error("Run aborted", str(exc), t=exc.t)
        raise

    return records


def run_pair(
    config: SimulationConfig,
    parallel: bool = False,
    logger: Optional[Logger] = None,
) -> dict[ControllerKind, list[SimRecord]]:
    """Run both controllers on the configured scenario.

    With ``parallel`` the two runs execute on a thread pool and are joined
    before the result is assembled.
    """
    logger = logger or default_logger()

    def run(kind: ControllerKind) -> list[SimRecord]:
        return run_simulation(
            config.scenario,
            kind,
            config.ufsmc,
            config.smc,
            sign_control=config.sign_control,
            logger=logger,
        )

    kinds = list(ControllerKind)
    if parallel:
        with ThreadPoolExecutor(max_workers=len(kinds)) as pool:
            results = list(pool.map(run, kinds))
    else:
        results = [run(kind) for kind in kinds]
    return dict(zip(kinds, results))
