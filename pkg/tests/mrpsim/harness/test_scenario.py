import math

import numpy as np
import pytest
from pydantic import ValidationError

from mrpsim.attitude_math import mrp_error_paper, recover_attitude
from mrpsim.common.exceptions import ConfigError
from mrpsim.controllers.base import ControllerKind
from mrpsim.controllers.ufsmc import UfsmcParams
from mrpsim.dynamics import DisturbanceModel, StepConfig
from mrpsim.harness.scenario import (
    Scenario,
    SimulationConfig,
    builtin_scenario,
    theta_target_for,
)


class TestScenario:
    def test_builtin_a(self):
        scenario = builtin_scenario("A")
        assert scenario.name == "A"
        assert scenario.sigma0 == (0.0, 0.0, 0.0)
        np.testing.assert_allclose(scenario.sigma_e0, [0.1, 0.2, -0.3])
        assert scenario.disturbance.bound == pytest.approx(0.015)
        assert scenario.step.steps == 20000

    def test_builtin_b_case_insensitive(self):
        scenario = builtin_scenario(" b ")
        assert scenario.name == "B"
        np.testing.assert_allclose(scenario.sigma_e0, [0.7809, 0.4685, -0.7809])

    def test_builtin_with_step(self):
        scenario = builtin_scenario("A", StepConfig(dt=1e-2, duration=2.0))
        assert scenario.step.steps == 200

    def test_initial_error_from_offset_attitude(self):
        sigma0 = np.array([0.05, -0.1, 0.2])
        scenario = Scenario(sigma0=tuple(sigma0), sigma_d=(0.7809, 0.4685, -0.7809))

        recovered = recover_attitude(scenario.sigma_e0, scenario.sigma_d)

        np.testing.assert_allclose(recovered, sigma0, atol=1e-12)

    def test_initial_error_vanishes_at_goal(self):
        scenario = Scenario(sigma0=(0.1, 0.2, -0.3), sigma_d=(0.1, 0.2, -0.3))
        assert np.linalg.norm(scenario.sigma_e0) < 1e-12

    def test_identity_start_uses_printed_error(self):
        scenario = builtin_scenario("B")
        np.testing.assert_array_equal(
            scenario.sigma_e0, mrp_error_paper(np.zeros(3), scenario.sigma_d)
        )

    def test_unknown_builtin(self):
        with pytest.raises(ConfigError, match="unknown scenario") as exc_info:
            builtin_scenario("C")
        assert exc_info.value.key_path == "scenario"

    def test_rejects_initial_rate(self):
        with pytest.raises(ValidationError, match="zero angular velocity"):
            Scenario(sigma_d=(0.1, 0.0, 0.0), omega0=(0.0, 0.01, 0.0))

    def test_rejects_non_finite_attitude(self):
        with pytest.raises(ValidationError, match="finite"):
            Scenario(sigma_d=(math.inf, 0.0, 0.0))

    def test_requires_desired_attitude(self):
        with pytest.raises(ValidationError):
            Scenario()


class TestSimulationConfig:
    def test_defaults(self):
        config = SimulationConfig(scenario=builtin_scenario("A"))
        assert config.ufsmc == UfsmcParams()
        assert config.smc.k == 1.5
        assert not config.sign_control

    def test_rejects_weak_switching_gain(self):
        with pytest.raises(ValidationError, match="gamma1"):
            SimulationConfig(scenario=builtin_scenario("A"), ufsmc=UfsmcParams(gamma1=0.01))

    def test_undisturbed_accepts_any_gain(self):
        scenario = Scenario(sigma_d=(0.1, 0.2, -0.3), disturbance=DisturbanceModel.none())
        SimulationConfig(scenario=scenario, ufsmc=UfsmcParams(gamma1=1e-6))


@pytest.mark.parametrize(
    "kind, theta0, expected",
    [
        (ControllerKind.UFSMC, 1.4321, 0.0),
        (ControllerKind.UFSMC, 3.5036, 2.0 * math.pi),
        (ControllerKind.UFSMC, math.pi, 2.0 * math.pi),
        ("smc", 3.5036, 0.0),
        ("smc", 1.0, 0.0),
    ],
)
def test_theta_target(kind, theta0, expected):
    assert theta_target_for(kind, theta0) == expected
