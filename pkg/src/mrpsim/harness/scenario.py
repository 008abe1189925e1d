"""Rest-to-rest maneuver definitions and run configuration."""

import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from mrpsim.attitude_math import Mrp, mrp_compose, mrp_conjugate, mrp_error_paper
from mrpsim.common.exceptions import ConfigError
from mrpsim.controllers.base import ControllerKind
from mrpsim.controllers.baseline_smc import SmcParams
from mrpsim.controllers.ufsmc import GAMMA1_MARGIN, UfsmcParams
from mrpsim.dynamics import DisturbanceModel, InertiaMatrix, StepConfig, spacecraft_inertia

Triple = tuple[float, float, float]
ZERO: Triple = (0.0, 0.0, 0.0)


class Scenario(BaseModel):
    """A rest-to-rest maneuver.

    Attributes:
        name: Short identifier used in reports and comparisons.
        sigma0: Initial body attitude MRP.
        omega0: Initial angular velocity (rad/s), zero.
        sigma_d: Desired attitude MRP.
        omega_d: Desired angular velocity (rad/s), zero.
        J: Spacecraft inertia.
        disturbance: External disturbance torque model.
        step: Integration step and duration.
    """

    model_config = ConfigDict(frozen=True)

    name: str = "custom"
    sigma0: Triple = ZERO
    omega0: Triple = ZERO
    sigma_d: Triple
    omega_d: Triple = ZERO
    J: InertiaMatrix = Field(default_factory=spacecraft_inertia)
    disturbance: DisturbanceModel = Field(default_factory=DisturbanceModel)
    step: StepConfig = Field(default_factory=StepConfig)

    @field_validator("sigma0", "sigma_d")
    @classmethod
    def validate_finite(cls, v: Triple) -> Triple:
        if not all(math.isfinite(x) for x in v):
            raise ValueError("attitude components must be finite")
        return v

    @field_validator("omega0", "omega_d")
    @classmethod
    def validate_rest(cls, v: Triple) -> Triple:
        if any(x != 0.0 for x in v):
            raise ValueError("rest-to-rest maneuvers require zero angular velocity")
        return v

    @property
    def sigma_e0(self) -> Mrp:
        """Initial error attitude.

        From the identity the printed error formula applies (it gives
        ``sigma_d``). From any other attitude the canonical error
        ``sigma_d (x) sigma0^-1`` is used, which vanishes at ``sigma0 == sigma_d``
        and satisfies ``recover_attitude(sigma_e0, sigma_d) == sigma0``.
        """
        sigma0 = np.array(self.sigma0)
        sigma_d = np.array(self.sigma_d)
        if not np.any(sigma0):
            return mrp_error_paper(sigma0, sigma_d)
        return mrp_compose(sigma_d, mrp_conjugate(sigma0))


SCENARIO_A = {"name": "A", "sigma_d": (0.1, 0.2, -0.3)}
SCENARIO_B = {"name": "B", "sigma_d": (0.7809, 0.4685, -0.7809)}
BUILTIN_SCENARIOS = {"A": SCENARIO_A, "B": SCENARIO_B}


def builtin_scenario(name: str, step: Optional[StepConfig] = None) -> Scenario:
    """Reference maneuver ``"A"`` (below pi) or ``"B"`` (above pi).

    Raises:
        ConfigError: If ``name`` is not a built-in scenario.
    """
    key = name.strip().upper()
    if key not in BUILTIN_SCENARIOS:
        raise ConfigError(
            f"unknown scenario {name!r} (expected one of {', '.join(BUILTIN_SCENARIOS)})",
            "scenario",
        )
    values = dict(BUILTIN_SCENARIOS[key])
    if step is not None:
        values["step"] = step
    return Scenario(**values)


class SimulationConfig(BaseModel):
    """Scenario plus both controllers' gains."""

    model_config = ConfigDict(frozen=True)

    scenario: Scenario
    ufsmc: UfsmcParams = Field(default_factory=UfsmcParams)
    smc: SmcParams = Field(default_factory=SmcParams)
    sign_control: bool = False

    @model_validator(mode="after")
    def validate_gamma1(self) -> "SimulationConfig":
        bound = self.scenario.disturbance.bound
        if self.ufsmc.gamma1 < GAMMA1_MARGIN * bound:
            raise ValueError(
                f"ufsmc.gamma1={self.ufsmc.gamma1} is below {GAMMA1_MARGIN} x "
                f"disturbance bound {bound:.6g}"
            )
        return self


def theta_target_for(kind: ControllerKind | str, theta0: float) -> float:
    """Rotation angle a controller converges to from ``theta0``.

    The unwinding-free law heads for the nearer of 0 and 2 pi; the baseline
    always heads for 0.
    """
    if ControllerKind(kind) == ControllerKind.UFSMC and theta0 >= math.pi:
        return 2.0 * math.pi
    return 0.0
