"""The three collocation losses and their parameter gradients.

Everything operates in normalized coordinates (a_hat, tau).  The residual
of the governing equation is

    r = dP/dtau + alpha * dP/da_hat + reaction_scale * mu(a0*a_hat) * P

and its loss gradient combines the first-order adjoints with the mixed
second-order adjoints supplied by the dual-valued backward pass.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..demography import (
    Domain,
    InitialProfile,
    MortalityModel,
    PolicyScenario,
    Quadrature,
    base_asfr,
    initial_density,
    mortality,
)
from ..errors import NumericError

__all__ = [
    "LossWeights",
    "pde_residual",
    "loss_pde",
    "loss_ic",
    "loss_bc",
    "total_loss",
]


@dataclass(frozen=True)
class LossWeights:
    lambda1: float = 1.0
    lambda2: float = 1.0
    lambda3: float = 1.0
    epsilon0: float = 1e-2

    def __post_init__(self):
        lams = (self.lambda1, self.lambda2, self.lambda3)
        if any(l < 0 for l in lams) or all(l == 0 for l in lams):
            raise ValueError("loss weights must be nonnegative and not all zero")


def _residual_from_dual(P, Pa, Pt, A, domain, mortality_model, reaction_scale):
    mu = mortality(np.asarray(A) * domain.a0, mortality_model, domain.a0)
    return Pt + domain.alpha * Pa + reaction_scale * mu * P, mu


def pde_residual(
    model,
    point,
    domain: Domain,
    mortality_model: MortalityModel | None = None,
    reaction_scale: float = 1.0,
) -> float:
    """Residual at a single normalized point (a_hat, tau)."""
    a, t = point
    P, Pa, Pt, _ = model.dual_batch(np.array([a]), np.array([t]))
    r, _ = _residual_from_dual(P, Pa, Pt, np.array([a]), domain, mortality_model or MortalityModel(), reaction_scale)
    if not np.isfinite(r[0]):
        raise NumericError(f"non-finite PDE residual at point ({a}, {t})")
    return float(r[0])


def loss_pde(
    model,
    A,
    T,
    domain: Domain,
    mortality_model: MortalityModel,
    reaction_scale: float = 1.0,
    with_grad: bool = True,
):
    """Mean squared residual over the interior batch; optionally its gradient."""
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        raise ValueError("empty interior batch")
    P, Pa, Pt, cache = model.dual_batch(A, T)
    r, mu = _residual_from_dual(P, Pa, Pt, A, domain, mortality_model, reaction_scale)
    if not np.all(np.isfinite(r)):
        bad = int(np.argmax(~np.isfinite(r)))
        raise NumericError(
            f"non-finite PDE residual at point ({A[bad]}, {np.asarray(T)[bad]})"
        )
    loss = float(np.mean(r * r))
    if not with_grad:
        return loss, None
    scale = 2.0 / r.size
    grad = model.dual_vjp(
        cache,
        scale * r * reaction_scale * mu,
        scale * r * domain.alpha,
        scale * r,
    )
    return loss, grad


def loss_ic(
    model,
    A,
    profile: InitialProfile,
    domain: Domain,
    epsilon0: float,
    with_grad: bool = True,
):
    """Relative initial-condition loss at tau = 0."""
    A = np.asarray(A, dtype=float)
    if A.size == 0:
        raise ValueError("empty initial-condition batch")
    P, cache = model.value_batch(A, np.zeros_like(A))
    P0 = initial_density(A * domain.a0, profile)
    den = P0 + epsilon0
    err = (P - P0) / den
    loss = float(np.mean(err * err))
    if not with_grad:
        return loss, None
    grad = model.value_vjp(cache, (2.0 / A.size) * err / den)
    return loss, grad


def loss_bc(
    model,
    T,
    scenario: PolicyScenario,
    quad: Quadrature,
    domain: Domain,
    with_grad: bool = True,
):
    """Birth-boundary loss: the model is evaluated at a_hat = 0 and at the
    quadrature ages for every sampled time, all in one batch."""
    T = np.asarray(T, dtype=float)
    if T.size == 0:
        raise ValueError("empty boundary batch")
    k = T.size
    ages = quad.points()
    q = ages.size
    A_full = np.concatenate([np.zeros(k), np.tile(ages / domain.a0, k)])
    T_full = np.concatenate([T, np.repeat(T, q)])
    P, cache = model.value_batch(A_full, T_full)
    P_bound = P[:k]
    P_int = P[k:].reshape(k, q)

    years = domain.t_min + T * domain.span
    bmat = np.minimum(np.outer(scenario.multiplier(years), base_asfr(ages)), scenario.cap)
    w = quad.weights()
    integrals = (bmat * P_int) @ w
    g = P_bound - integrals
    loss = float(np.mean(g * g))
    if not with_grad:
        return loss, None
    scale = 2.0 / k
    cot = np.concatenate([scale * g, (-scale * g[:, None] * bmat * w[None, :]).ravel()])
    grad = model.value_vjp(cache, cot)
    return loss, grad


def total_loss(components, weights: LossWeights) -> float:
    l1, l2, l3 = components
    return weights.lambda1 * l1 + weights.lambda2 * l2 + weights.lambda3 * l3
