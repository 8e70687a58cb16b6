"""Collocation losses: closed-form cases, oracle consistency, gradients."""
import numpy as np
import pytest

from popinn.autodiff import central_gradient
from popinn.demography import (
    Domain,
    InitialProfile,
    MortalityModel,
    PolicyScenario,
    Quadrature,
    initial_density,
    mortality,
    scenario_by_name,
)
from popinn.errors import NumericError
from popinn.reference import GridSpec, solve_upwind
from popinn.training import LossWeights, loss_bc, loss_ic, loss_pde, pde_residual, total_loss
from popinn.training.models import FieldSurrogate, build_surrogate

DOMAIN = Domain()
MORT = MortalityModel()
NO_BIRTHS = PolicyScenario("none", (), cap=0.0)


class FnModel:
    """Test double evaluating a closed-form density (no parameters)."""

    def __init__(self, fn, fn_a=None, fn_t=None):
        self.fn = fn
        self.fn_a = fn_a or (lambda A, T: np.zeros_like(A))
        self.fn_t = fn_t or (lambda A, T: np.zeros_like(A))

    def value_batch(self, A, T):
        A = np.asarray(A, dtype=float)
        T = np.asarray(T, dtype=float)
        return self.fn(A, T), None

    def dual_batch(self, A, T):
        A = np.asarray(A, dtype=float)
        T = np.asarray(T, dtype=float)
        return self.fn(A, T), self.fn_a(A, T), self.fn_t(A, T), None


def constant_model(c):
    return FnModel(lambda A, T: np.full_like(A, float(c)))


class TestLossWeights:
    def test_defaults(self):
        w = LossWeights()
        assert (w.lambda1, w.lambda2, w.lambda3, w.epsilon0) == (1.0, 1.0, 1.0, 1e-2)

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            LossWeights(0.0, 0.0, 0.0)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            LossWeights(-1.0, 1.0, 1.0)


class TestPdeResidual:
    def test_zero_network(self):
        assert pde_residual(constant_model(0.0), (0.4, 0.6), DOMAIN) == 0.0

    def test_constant_network(self):
        c = 1.7
        a_hat = 0.45
        r = pde_residual(constant_model(c), (a_hat, 0.2), DOMAIN)
        assert r == pytest.approx(mortality(a_hat * 100.0) * c, rel=1e-14)


class TestLossPde:
    def test_zero_network(self):
        A = np.linspace(0.1, 0.9, 9)
        loss, grad = loss_pde(constant_model(0.0), A, A, DOMAIN, MORT, with_grad=False)
        assert loss == 0.0 and grad is None

    def test_constant_network_mean_mu_squared(self):
        A = np.linspace(0.05, 0.95, 11)
        T = np.linspace(0.0, 1.0, 11)
        loss, _ = loss_pde(constant_model(1.0), A, T, DOMAIN, MORT, with_grad=False)
        assert loss == pytest.approx(float(np.mean(mortality(A * 100.0) ** 2)), rel=1e-14)

    def test_residual_homogeneity(self):
        A = np.linspace(0.05, 0.95, 11)
        l1, _ = loss_pde(constant_model(1.0), A, A, DOMAIN, MORT, with_grad=False)
        l2, _ = loss_pde(constant_model(2.0), A, A, DOMAIN, MORT, with_grad=False)
        assert l2 == pytest.approx(4.0 * l1, rel=1e-13)

    def test_reference_field_residual_shrinks_with_refinement(self):
        # the discrete reference solution, viewed through a bilinear
        # interpolant, nearly satisfies the PDE loss -- and more nearly so
        # on a finer grid
        profile = lambda a: np.sin(np.pi * np.asarray(a, dtype=float) / 100.0) ** 2
        rng = np.random.default_rng(0)
        A = 0.05 + 0.9 * rng.random(400)
        T = 0.05 + 0.9 * rng.random(400)
        losses = []
        for na, nt in [(101, 61), (201, 121)]:
            f = solve_upwind(NO_BIRTHS, profile=profile, grid=GridSpec(na, nt))
            loss, _ = loss_pde(FieldSurrogate(f), A, T, DOMAIN, MORT, with_grad=False)
            losses.append(loss)
        assert losses[0] < 1e-2
        assert losses[1] < 0.6 * losses[0]

    def test_empty_batch_rejected(self):
        with pytest.raises(ValueError):
            loss_pde(constant_model(0.0), np.array([]), np.array([]), DOMAIN, MORT)

    def test_non_finite_reported_with_point(self):
        bad = FnModel(lambda A, T: np.where(A > 0.5, np.nan, 0.0))
        with pytest.raises(NumericError):
            loss_pde(bad, np.array([0.2, 0.8]), np.array([0.1, 0.1]), DOMAIN, MORT)


class TestLossIc:
    PROFILE = InitialProfile()

    def _exact_fit(self, A, T):
        return initial_density(np.asarray(A, dtype=float) * 100.0, self.PROFILE)

    def test_exact_fit_is_zero(self):
        A = np.linspace(0.0, 1.0, 21)
        loss, _ = loss_ic(FnModel(self._exact_fit), A, self.PROFILE, DOMAIN, 1e-2, with_grad=False)
        assert loss == 0.0

    def test_doubled_profile(self):
        A = np.linspace(0.0, 1.0, 21)
        model = FnModel(lambda a, t: 2.0 * self._exact_fit(a, t))
        loss, _ = loss_ic(model, A, self.PROFILE, DOMAIN, 1e-2, with_grad=False)
        P0 = initial_density(A * 100.0, self.PROFILE)
        expected = float(np.mean((P0 / (P0 + 1e-2)) ** 2))
        assert loss == pytest.approx(expected, rel=1e-14)
        assert loss == pytest.approx(1.0, abs=0.15)

    def test_zero_network_near_one(self):
        A = np.linspace(0.0, 1.0, 21)
        loss, _ = loss_ic(constant_model(0.0), A, self.PROFILE, DOMAIN, 1e-2, with_grad=False)
        assert loss == pytest.approx(1.0, abs=0.15)

    def test_empty_batch_rejected(self):
        with pytest.raises(ValueError):
            loss_ic(constant_model(0.0), np.array([]), self.PROFILE, DOMAIN, 1e-2)


class TestLossBc:
    QUAD = Quadrature()

    def test_zero_network(self):
        T = np.linspace(0.0, 1.0, 7)
        loss, _ = loss_bc(constant_model(0.0), T, scenario_by_name("three-child"), self.QUAD, DOMAIN, with_grad=False)
        assert loss == 0.0

    def test_unit_network_three_child(self):
        T = np.linspace(0.0, 1.0, 7)
        loss, _ = loss_bc(constant_model(1.0), T, scenario_by_name("three-child"), self.QUAD, DOMAIN, with_grad=False)
        assert loss == pytest.approx((1.0 - 1.98) ** 2, abs=2e-3)

    def test_unit_network_separate_two_child(self):
        T = np.linspace(0.0, 1.0, 7)
        loss, _ = loss_bc(constant_model(1.0), T, scenario_by_name("separate-two-child"), self.QUAD, DOMAIN, with_grad=False)
        assert loss == pytest.approx((1.0 - 1.485) ** 2, abs=2e-3)

    def test_empty_batch_rejected(self):
        with pytest.raises(ValueError):
            loss_bc(constant_model(0.0), np.array([]), scenario_by_name("three-child"), self.QUAD, DOMAIN)


class TestTotalLoss:
    def test_unit_weights(self):
        assert total_loss((0.1, 0.2, 0.3), LossWeights()) == pytest.approx(0.6)

    def test_selective_weights(self):
        assert total_loss((0.5, 9.0, 9.0), LossWeights(2.0, 0.0, 0.0)) == 1.0


class TestLossGradients:
    def test_all_three_gradients_match_finite_differences(self):
        model = build_surrogate("mlp", widths=(2, 6, 1), seed=3)
        theta0 = model.get_flat()
        rng = np.random.default_rng(4)
        A, T = rng.random(8), rng.random(8)
        Tb = rng.random(5)
        quad = Quadrature(nodes=11)
        profile = InitialProfile()
        sc = scenario_by_name("three-child")

        cases = {
            "pde": lambda: loss_pde(model, A, T, DOMAIN, MORT),
            "ic": lambda: loss_ic(model, A, profile, DOMAIN, 1e-2),
            "bc": lambda: loss_bc(model, Tb, sc, quad, DOMAIN),
        }
        for name, call in cases.items():
            _, grad = call()

            def f(th, call=call):
                model.set_flat(th)
                val = call()[0]
                model.set_flat(theta0)
                return val

            numeric = central_gradient(f, theta0, 1e-5)
            scale = float(np.max(np.abs(grad))) or 1.0
            err = np.max(np.abs(grad - numeric)) / scale
            assert err < 1e-6, name
