import math

import numpy as np
import pytest
from pydantic import ValidationError

from mrpsim.attitude_math import mrp_kinematics_matrix
from mrpsim.common.exceptions import ConfigError, NonFiniteControl, ZeroInitialError
from mrpsim.controllers.base import ControllerKind
from mrpsim.controllers.ufsmc import (
    UfsmcController,
    UfsmcMemory,
    UfsmcParams,
    clamp_sigma,
    g_of,
    gamma2_of,
    h_dot_analytic,
    h_of,
    rho_dot_analytic,
    rho_of,
    smooth_sign,
    switching_function,
    switching_gain,
    ufsmc_control,
)
from mrpsim.dynamics import BodyErrorState, error_dynamics_rhs, spacecraft_inertia

J_REF = spacecraft_inertia()
SIGMA_A = np.array([0.1, 0.2, -0.3])
SIGMA_B = np.array([0.7809, 0.4685, -0.7809])
FD_STEP = 1e-6


def random_unit(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def random_state(rng: np.random.Generator) -> BodyErrorState:
    sigma = random_unit(rng) * rng.uniform(0.05, 3.0)
    omega = random_unit(rng) * rng.uniform(0.0, 1.0)
    return BodyErrorState(sigma, omega)


def along_motion(f, state: BodyErrorState, e: np.ndarray) -> float:
    """Central difference of ``f(sigma, e)`` along ``sigma_dot``."""
    sigma_dot = mrp_kinematics_matrix(state.sigma_e) @ state.omega_e
    ahead = f(state.sigma_e + FD_STEP * sigma_dot, e)
    behind = f(state.sigma_e - FD_STEP * sigma_dot, e)
    return (ahead - behind) / (2.0 * FD_STEP)


def on_axis(e: np.ndarray, theta: float) -> np.ndarray:
    return e * math.tan(theta / 4.0)


class TestParams:
    def test_defaults(self):
        params = UfsmcParams()
        assert (params.alpha, params.gamma1, params.epsilon1, params.epsilon2) == (
            2.0,
            30.0,
            0.5,
            1e-4,
        )

    def test_aliases(self):
        params = UfsmcParams(eps1=0.2, eps2=1e-3)
        assert params.epsilon1 == 0.2
        assert params.epsilon2 == 1e-3

    @pytest.mark.parametrize("field", ["alpha", "gamma1", "epsilon1", "epsilon2"])
    def test_rejects_non_positive(self, field):
        with pytest.raises(ValidationError):
            UfsmcParams(**{field: 0.0})

    def test_rejects_unknown_field(self):
        with pytest.raises(ValidationError):
            UfsmcParams(beta=1.0)


class TestMemory:
    def test_axis_is_unit_and_frozen(self):
        mem = UfsmcMemory.from_initial(SIGMA_A)
        assert np.linalg.norm(mem.e) == pytest.approx(1.0, abs=1e-15)
        with pytest.raises(ValueError):
            mem.e[0] = 1.0

    def test_zero_initial(self):
        with pytest.raises(ZeroInitialError):
            UfsmcMemory.from_initial(np.zeros(3))


class TestSurfaceGain:
    def test_g_on_axis(self, rng):
        e = random_unit(rng)
        for theta in (0.3, 1.4321, math.pi, 3.5036, 6.0):
            assert g_of(on_axis(e, theta), e) == pytest.approx(theta / 4.0 - math.pi / 4.0)

    def test_rho_sign_flips_at_half_turn(self):
        e = SIGMA_A / np.linalg.norm(SIGMA_A)
        assert rho_of(on_axis(e, 1.0), e) < 0.0
        assert rho_of(on_axis(e, math.pi), e) == pytest.approx(0.0, abs=1e-15)
        assert rho_of(on_axis(e, 4.0), e) > 0.0

    def test_reference_initial_gains(self):
        e_b = SIGMA_B / np.linalg.norm(SIGMA_B)
        n2 = float(SIGMA_B @ SIGMA_B)
        expected = math.sinh(math.atan(math.sqrt(n2)) - math.pi / 4.0) / (1.0 + n2)
        assert rho_of(SIGMA_B, e_b) == pytest.approx(expected, rel=1e-14)
        assert h_of(SIGMA_B, e_b) == pytest.approx(expected * math.sqrt(n2), rel=1e-14)

    def test_switching_function(self):
        e = SIGMA_A / np.linalg.norm(SIGMA_A)
        state = BodyErrorState(SIGMA_A, np.array([0.01, 0.0, -0.02]))
        expected = state.omega_e - 2.0 * rho_of(SIGMA_A, e) * SIGMA_A
        np.testing.assert_allclose(switching_function(state, e, 2.0), expected, atol=1e-16)


class TestAnalyticDerivatives:
    def test_rho_dot_matches_finite_difference(self, rng):
        for _ in range(1000):
            e = random_unit(rng)
            state = random_state(rng)
            sigma_dot = mrp_kinematics_matrix(state.sigma_e) @ state.omega_e
            analytic = rho_dot_analytic(state, e, sigma_dot)
            numeric = along_motion(rho_of, state, e)
            assert abs(analytic - numeric) <= 1e-6 * max(1.0, abs(analytic))

    def test_h_dot_matches_finite_difference(self, rng):
        for _ in range(1000):
            e = random_unit(rng)
            state = random_state(rng)
            sigma_dot = mrp_kinematics_matrix(state.sigma_e) @ state.omega_e
            analytic = h_dot_analytic(state, e, sigma_dot)
            numeric = along_motion(h_of, state, e)
            assert abs(analytic - numeric) <= 1e-6 * max(1.0, abs(analytic))

    def test_at_rest(self):
        e = SIGMA_A / np.linalg.norm(SIGMA_A)
        state = BodyErrorState(SIGMA_A, np.zeros(3))
        assert rho_dot_analytic(state, e, np.zeros(3)) == 0.0
        assert h_dot_analytic(state, e, np.zeros(3)) == 0.0

    def test_h_dot_at_origin(self):
        state = BodyErrorState(np.zeros(3), np.array([0.1, 0.0, 0.0]))
        sigma_dot = mrp_kinematics_matrix(state.sigma_e) @ state.omega_e
        assert math.isfinite(h_dot_analytic(state, np.array([1.0, 0.0, 0.0]), sigma_dot))

    def test_gamma2_scaling(self, rng):
        e = random_unit(rng)
        state = random_state(rng)
        sigma_dot = mrp_kinematics_matrix(state.sigma_e) @ state.omega_e
        expected = 2.0 * abs(h_dot_analytic(state, e, sigma_dot)) * 114.0
        assert gamma2_of(state, e, 2.0, J_REF) == pytest.approx(expected, rel=1e-12)

    def test_switching_gain_ignores_sign(self):
        assert switching_gain(-0.5, 2.0, J_REF) == pytest.approx(114.0, rel=1e-12)
        assert switching_gain(0.5, 2.0, J_REF) == switching_gain(-0.5, 2.0, J_REF)


class TestSmoothSign:
    def test_outside_layer(self):
        np.testing.assert_array_equal(smooth_sign([0.5, -2.0, 7.0], 0.5), [1.0, -1.0, 1.0])

    def test_inside_layer(self):
        out = smooth_sign([0.0, 0.25, -0.1], 0.5)
        np.testing.assert_allclose(
            out, [0.0, math.atan(0.5 * math.tan(1.0)), -math.atan(0.2 * math.tan(1.0))]
        )

    def test_continuous_at_boundary(self):
        eps = 0.5
        inside = smooth_sign([eps * (1.0 - 1e-12), 0.0, 0.0], eps)[0]
        assert inside == pytest.approx(1.0, abs=1e-10)

    def test_odd_and_bounded(self, rng):
        s = rng.normal(scale=2.0, size=3)
        np.testing.assert_allclose(smooth_sign(-s, 0.3), -smooth_sign(s, 0.3))
        assert np.all(np.abs(smooth_sign(s, 0.3)) <= 1.0)


class TestClampSigma:
    def test_limits_large_components(self):
        out = clamp_sigma([2e4, -3e4, 5.0], 1e-4)
        np.testing.assert_array_equal(out, [1e4, -1e4, 5.0])

    def test_leaves_ordinary_attitudes(self):
        np.testing.assert_array_equal(clamp_sigma(SIGMA_B, 1e-4), SIGMA_B)


class TestControlLaw:
    @pytest.fixture
    def mem(self) -> UfsmcMemory:
        return UfsmcMemory.from_initial(SIGMA_A)

    def test_at_rest(self, mem):
        params = UfsmcParams()
        state = BodyErrorState(SIGMA_A, np.zeros(3))
        u, diag = ufsmc_control(state, params, mem, J_REF)

        s = -params.alpha * rho_of(SIGMA_A, mem.e) * SIGMA_A
        np.testing.assert_allclose(diag.s, s, atol=1e-16)
        np.testing.assert_allclose(diag.u_eq, np.zeros(3), atol=1e-16)
        assert diag.gamma2 == 0.0
        np.testing.assert_allclose(u, -params.gamma1 * smooth_sign(s, params.epsilon1))
        assert diag.theta == pytest.approx(4.0 * math.atan(float(np.linalg.norm(SIGMA_A))))

    def test_initial_projection(self, mem):
        """At rest, e^T s = -alpha h."""
        state = BodyErrorState(SIGMA_A, np.zeros(3))
        _, diag = ufsmc_control(state, UfsmcParams(), mem, J_REF)
        assert float(mem.e @ diag.s) == pytest.approx(-2.0 * diag.h, rel=1e-14)

    def test_sliding_variable_dynamics(self, rng):
        """Without disturbance, s_dot = -(gamma1 + gamma2) J^-1 l(s)."""
        params = UfsmcParams()
        for _ in range(50):
            state = random_state(rng)
            mem = UfsmcMemory.from_initial(random_unit(rng))
            u, diag = ufsmc_control(state, params, mem, J_REF)

            sigma_dot, omega_dot = error_dynamics_rhs(state, u, np.zeros(3), J_REF)
            s_dot = omega_dot - params.alpha * (
                diag.rho_dot * state.sigma_e + diag.rho * sigma_dot
            )
            expected = -(params.gamma1 + diag.gamma2) * (
                J_REF.inverse @ smooth_sign(diag.s, params.epsilon1)
            )
            np.testing.assert_allclose(s_dot, expected, rtol=1e-9, atol=1e-12)

    def test_gamma2_matches_helper(self, rng, mem):
        state = random_state(rng)
        _, diag = ufsmc_control(state, UfsmcParams(), mem, J_REF)
        assert diag.gamma2 == gamma2_of(state, mem.e, 2.0, J_REF)
        assert diag.gamma2 == switching_gain(diag.h_dot, 2.0, J_REF)
        assert diag.gamma2 >= 0.0

    def test_sign_control(self, mem):
        state = BodyErrorState(SIGMA_A, np.zeros(3))
        params = UfsmcParams()
        u, diag = ufsmc_control(state, params, mem, J_REF, sign_control=True)
        np.testing.assert_allclose(u, -params.gamma1 * np.sign(diag.s))

    def test_sign_of_zero_component(self):
        mem = UfsmcMemory.from_initial([0.0, 0.0, 0.4])
        state = BodyErrorState(np.array([0.0, 0.0, 0.4]), np.zeros(3))
        u, _ = ufsmc_control(state, UfsmcParams(), mem, J_REF, sign_control=True)
        assert u[0] == 0.0
        assert u[1] == 0.0

    def test_non_finite_torque(self, mem):
        state = BodyErrorState(SIGMA_A, np.array([math.inf, 0.0, 0.0]))
        with pytest.raises(NonFiniteControl):
            ufsmc_control(state, UfsmcParams(), mem, J_REF)


class TestController:
    def test_binds_axis(self):
        controller = UfsmcController(UfsmcParams(), J_REF, SIGMA_B)
        assert controller.kind == ControllerKind.UFSMC
        np.testing.assert_allclose(controller.axis, SIGMA_B / np.linalg.norm(SIGMA_B))

    def test_control_delegates(self):
        controller = UfsmcController(UfsmcParams(), J_REF, SIGMA_A)
        state = BodyErrorState(SIGMA_A, np.array([0.01, 0.02, 0.0]))
        u, _ = controller.control(state)
        expected, _ = ufsmc_control(state, UfsmcParams(), controller.memory, J_REF)
        np.testing.assert_array_equal(u, expected)

    def test_rejects_weak_switching_gain(self):
        with pytest.raises(ConfigError) as exc_info:
            UfsmcController(UfsmcParams(gamma1=0.01), J_REF, SIGMA_A, disturbance_bound=0.015)
        assert exc_info.value.key_path == "ufsmc.gamma1"

    def test_accepts_gain_above_margin(self):
        UfsmcController(UfsmcParams(gamma1=0.02), J_REF, SIGMA_A, disturbance_bound=0.015)

    def test_zero_initial_error(self):
        with pytest.raises(ZeroInitialError):
            UfsmcController(UfsmcParams(), J_REF, np.zeros(3))
