"""Problem-defining coefficients: mortality, fertility policies, initial
profile, the birth-integral quadrature, and the domain constants.

All functions accept scalars or numpy arrays of physical ages (years) and
calendar years.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NumericError

__all__ = [
    "Domain",
    "MortalityModel",
    "PolicyScenario",
    "InitialProfile",
    "Quadrature",
    "mortality",
    "mortality_integral",
    "base_asfr",
    "fertility",
    "initial_density",
    "birth_integral",
    "scenario_by_name",
    "SCENARIOS",
]


@dataclass(frozen=True)
class Domain:
    a0: float = 100.0
    t_min: float = 2024.0
    t_max: float = 2054.0

    def __post_init__(self):
        if self.a0 <= 0 or self.t_max <= self.t_min:
            raise ConfigError("domain requires a0 > 0 and t_max > t_min")

    @property
    def alpha(self) -> float:
        """Time-age scaling factor (t_max - t_min) / a0."""
        return (self.t_max - self.t_min) / self.a0

    @property
    def span(self) -> float:
        return self.t_max - self.t_min


@dataclass(frozen=True)
class MortalityModel:
    mu0: float = 0.006805083
    B: float = 0.0003
    breakpoint: float = 60.0
    exp_rate: float = 0.06


_DEFAULT_MORTALITY = MortalityModel()


def mortality(a, model: MortalityModel = _DEFAULT_MORTALITY, a0: float = 100.0):
    """Age-specific mortality rate: linear below the breakpoint, exponential above."""
    a_arr = np.asarray(a, dtype=float)
    if np.any(a_arr < 0) or np.any(a_arr > a0):
        raise ValueError(f"age outside [0, {a0}]")
    linear = model.mu0 + model.B * a_arr
    corner = model.mu0 + model.B * model.breakpoint
    out = np.where(
        a_arr < model.breakpoint,
        linear,
        corner * np.exp(model.exp_rate * (a_arr - model.breakpoint)),
    )
    return float(out) if np.isscalar(a) else out


def mortality_integral(lo: float, hi: float, model: MortalityModel = _DEFAULT_MORTALITY) -> float:
    """Closed-form integral of the mortality rate over [lo, hi]."""
    if hi < lo:
        return -mortality_integral(hi, lo, model)

    bp = model.breakpoint
    corner = model.mu0 + model.B * bp

    def anti(s: float) -> float:
        # continuous antiderivative across the breakpoint
        if s < bp:
            return model.mu0 * s + 0.5 * model.B * s * s
        below = model.mu0 * bp + 0.5 * model.B * bp * bp
        return below + (corner / model.exp_rate) * (math.exp(model.exp_rate * (s - bp)) - 1.0)

    return anti(hi) - anti(lo)


@dataclass(frozen=True)
class PolicyScenario:
    """A fertility policy: stepped multiplier increments plus a hard cap."""

    name: str
    steps: tuple  # (year, increment) pairs
    cap: float

    def multiplier(self, t):
        t_arr = np.asarray(t, dtype=float)
        m = np.ones_like(t_arr)
        for year, inc in self.steps:
            m = m + inc * (t_arr >= year)
        return float(m) if np.isscalar(t) else m


THREE_CHILD = PolicyScenario(
    "three-child", ((2014.0, 0.2), (2016.0, 0.2), (2021.0, 0.2)), cap=0.25
)
SEPARATE_TWO_CHILD = PolicyScenario("separate-two-child", ((2024.0, 0.2),), cap=0.20)
UNIVERSAL_TWO_CHILD = PolicyScenario("universal-two-child", ((2024.0, 0.2),), cap=0.25)

SCENARIOS = {
    "three-child": THREE_CHILD,
    "separate-two-child": SEPARATE_TWO_CHILD,
    "universal-two-child": UNIVERSAL_TWO_CHILD,
}


def scenario_by_name(name: str) -> PolicyScenario:
    # "two-child" appears as a shorthand for the separate two-child policy
    key = "separate-two-child" if name == "two-child" else name
    try:
        return SCENARIOS[key]
    except KeyError:
        raise ConfigError(
            f"unknown scenario {name!r}; expected one of {sorted(SCENARIOS)}"
        ) from None


FERTILE_LO = 20.0
FERTILE_HI = 35.0


def base_asfr(a):
    """Quadratic base fertility 0.0022*(a-20)*(35-a), supported on [20, 35]."""
    a_arr = np.asarray(a, dtype=float)
    out = np.where(
        (a_arr >= FERTILE_LO) & (a_arr <= FERTILE_HI),
        0.0022 * (a_arr - FERTILE_LO) * (FERTILE_HI - a_arr),
        0.0,
    )
    return float(out) if np.isscalar(a) else out


def fertility(a, t, scenario: PolicyScenario):
    """Policy fertility rate min(base_asfr(a) * multiplier(t), cap)."""
    out = np.minimum(base_asfr(a) * scenario.multiplier(t), scenario.cap)
    return float(out) if np.isscalar(a) and np.isscalar(t) else out


_DEFAULT_KNOTS = (
    (0.0, 0.85),
    (20.0, 0.95),
    (35.0, 1.00),
    (60.0, 0.80),
    (80.0, 0.45),
    (100.0, 0.05),
)


@dataclass(frozen=True)
class InitialProfile:
    """Piecewise-linear initial age density, strictly positive on its range."""

    knots: tuple = _DEFAULT_KNOTS

    def __post_init__(self):
        ages = [k[0] for k in self.knots]
        dens = [k[1] for k in self.knots]
        if len(ages) < 2 or any(b <= a for a, b in zip(ages, ages[1:])):
            raise ConfigError("profile ages must be strictly increasing")
        if any(d <= 0 for d in dens):
            raise ConfigError("profile densities must be strictly positive")

    @property
    def ages(self) -> np.ndarray:
        return np.array([k[0] for k in self.knots])

    @property
    def densities(self) -> np.ndarray:
        return np.array([k[1] for k in self.knots])

    def __call__(self, a):
        return initial_density(a, self)

    @classmethod
    def from_csv(cls, path) -> "InitialProfile":
        """Load knots from a CSV with header ``age,density``."""
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip() for h in header] != ["age", "density"]:
                raise ConfigError(f"{path}: expected header 'age,density'")
            knots = []
            for row in reader:
                if not row:
                    continue
                try:
                    knots.append((float(row[0]), float(row[1])))
                except (ValueError, IndexError):
                    raise ConfigError(f"{path}: malformed row {row!r}") from None
        return cls(tuple(knots))


def initial_density(a, profile: InitialProfile):
    """Linear interpolation of the profile at physical age(s) ``a``."""
    ages = profile.ages
    a_arr = np.asarray(a, dtype=float)
    if np.any(a_arr < ages[0]) or np.any(a_arr > ages[-1]):
        raise ValueError(f"age outside profile range [{ages[0]}, {ages[-1]}]")
    out = np.interp(a_arr, ages, profile.densities)
    return float(out) if np.isscalar(a) else out


@dataclass(frozen=True)
class Quadrature:
    """Composite trapezoid rule over the fertile age window."""

    lo: float = FERTILE_LO
    hi: float = FERTILE_HI
    nodes: int = 61

    def __post_init__(self):
        if self.nodes < 2:
            raise ConfigError("quadrature needs at least 2 nodes")

    def points(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.nodes)

    def weights(self) -> np.ndarray:
        h = (self.hi - self.lo) / (self.nodes - 1)
        w = np.full(self.nodes, h)
        w[0] = w[-1] = 0.5 * h
        return w


def birth_integral(density_of_age, t, scenario: PolicyScenario, quad: Quadrature) -> float:
    """Trapezoid approximation of the birth boundary integral at time ``t``.

    ``density_of_age`` maps an array of physical ages to densities.
    """
    ages = quad.points()
    dens = np.asarray(density_of_age(ages), dtype=float)
    if not np.all(np.isfinite(dens)):
        raise NumericError(f"non-finite density in birth integral at t={t}")
    rates = fertility(ages, float(t), scenario)
    return float(np.dot(quad.weights(), rates * dens))
