"""Classical reference solutions of the population PDE.

The governing equation lives on the normalized square (a_hat, tau) in
[0,1]^2:

    dP/dtau + alpha * dP/da_hat = -reaction_scale * mu(a0 * a_hat) * P

with the birth-integral boundary at a_hat = 0 and the initial profile at
tau = 0.  The physical grid labels (years of age, calendar years) are kept
for I/O; with the default alpha this corresponds to aging at one year per
calendar year.  ``reaction_scale`` defaults to 1 (mortality acts per unit
of normalized time, as the equation is stated); passing the time span
instead recovers per-year mortality ("physical aging").
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .demography import (
    Domain,
    InitialProfile,
    MortalityModel,
    PolicyScenario,
    Quadrature,
    birth_integral,
    mortality,
    mortality_integral,
)
from .errors import CflViolation, NumericError

__all__ = [
    "GridSpec",
    "Field",
    "solve_upwind",
    "characteristic_solution",
    "relative_l2",
    "save_field",
    "load_field",
]


@dataclass(frozen=True)
class GridSpec:
    na: int = 201
    nt: int = 601
    domain: Domain = field(default_factory=Domain)
    check_cfl: bool = True  # prediction lattices skip the stability bound

    def __post_init__(self):
        if self.na < 2 or self.nt < 2:
            raise ValueError("grid needs at least 2 nodes per axis")
        if self.check_cfl and self.cfl_number > 1.0 + 1e-12:
            raise CflViolation(
                f"explicit upwind unstable: time step {self.dt_years:g}y exceeds "
                f"age step {self.da_years:g}y (CFL number {self.cfl_number:.3g} > 1); "
                f"increase nt or decrease na"
            )

    @property
    def da_norm(self) -> float:
        return 1.0 / (self.na - 1)

    @property
    def dtau(self) -> float:
        return 1.0 / (self.nt - 1)

    @property
    def da_years(self) -> float:
        return self.domain.a0 / (self.na - 1)

    @property
    def dt_years(self) -> float:
        return self.domain.span / (self.nt - 1)

    @property
    def cfl_number(self) -> float:
        return self.domain.alpha * self.dtau / self.da_norm

    @property
    def ages(self) -> np.ndarray:
        return np.linspace(0.0, self.domain.a0, self.na)

    @property
    def years(self) -> np.ndarray:
        return np.linspace(self.domain.t_min, self.domain.t_max, self.nt)


@dataclass
class Field:
    """Dense age x time array of population density."""

    values: np.ndarray  # (na, nt)
    grid: GridSpec

    @property
    def domain(self) -> Domain:
        return self.grid.domain

    clamp_count: int = 0


def solve_upwind(
    scenario: PolicyScenario,
    profile=None,
    grid: GridSpec | None = None,
    mortality_model: MortalityModel | None = None,
    quad: Quadrature | None = None,
    reaction_scale: float = 1.0,
) -> Field:
    """First-order explicit upwind solve of the full problem (births on
    unless the scenario's fertility vanishes)."""
    grid = grid or GridSpec()
    profile = profile if profile is not None else InitialProfile()
    mortality_model = mortality_model or MortalityModel()
    quad = quad or Quadrature()
    domain = grid.domain

    ages = grid.ages
    years = grid.years
    mu = mortality(ages, mortality_model, domain.a0)
    c = grid.cfl_number
    decay = grid.dtau * reaction_scale * mu

    values = np.empty((grid.na, grid.nt))
    values[:, 0] = profile(ages)
    clamped = 0
    col = values[:, 0].copy()
    for n in range(1, grid.nt):
        new = np.empty_like(col)
        new[0] = 0.0  # placeholder until the boundary closure below
        new[1:] = col[1:] - c * (col[1:] - col[:-1]) - decay[1:] * col[1:]
        if not np.all(np.isfinite(new[1:])):
            raise NumericError(f"non-finite upwind update at time step {n}")
        neg = new[1:] < 0.0
        if np.any(neg):
            clamped += int(np.count_nonzero(neg))
            new[1:][neg] = 0.0
        # boundary closes against the freshly computed interior column
        new[0] = birth_integral(
            lambda a: np.interp(a, ages, new, left=0.0, right=0.0),
            years[n],
            scenario,
            quad,
        )
        values[:, n] = new
        col = new
    return Field(values, grid, clamp_count=clamped)


def characteristic_solution(
    a: float,
    t: float,
    domain: Domain | None = None,
    profile=None,
    mortality_model: MortalityModel | None = None,
    reaction_scale: float = 1.0,
) -> float:
    """Analytic solution along characteristics, valid for zero fertility.

    The characteristic through (a, t) traces back to the initial data at
    age a - a0*alpha*tau; points that trace to the birth boundary are
    rejected (undefined without births).  The mortality integral uses the
    closed-form piecewise antiderivative.
    """
    domain = domain or Domain()
    profile = profile if profile is not None else InitialProfile()
    mortality_model = mortality_model or MortalityModel()
    tau = (t - domain.t_min) / domain.span
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"time {t} outside [{domain.t_min}, {domain.t_max}]")
    back_age = a - domain.a0 * domain.alpha * tau
    if -1e-9 <= back_age < 0.0:  # rounding at the corner characteristic
        back_age = 0.0
    if back_age < 0.0:
        raise ValueError(
            f"point (a={a}, t={t}) traces back to the birth boundary; "
            "the characteristic solution needs b == 0 data there"
        )
    exponent = (reaction_scale / domain.span) * mortality_integral(back_age, a, mortality_model)
    return float(profile(back_age)) * float(np.exp(-exponent))


def relative_l2(field_a: Field | np.ndarray, field_b: Field | np.ndarray) -> float:
    """||A - B||_2 / ||B||_2 with B the reference."""
    a = field_a.values if isinstance(field_a, Field) else np.asarray(field_a, dtype=float)
    b = field_b.values if isinstance(field_b, Field) else np.asarray(field_b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"grid mismatch: {a.shape} vs {b.shape}")
    ref = np.sqrt(np.sum(b * b))
    if ref == 0.0:
        raise NumericError("zero reference norm in relative L2")
    return float(np.sqrt(np.sum((a - b) ** 2)) / ref)


def save_field(path, f: Field) -> None:
    """CSV export: header age,year,density; age outer, year inner."""
    ages = f.grid.ages
    years = f.grid.years
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["age", "year", "density"])
        for i, a in enumerate(ages):
            for n, t in enumerate(years):
                writer.writerow([repr(float(a)), repr(float(t)), repr(float(f.values[i, n]))])


def load_field(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a field CSV; returns (ages, years, values[na, nt])."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["age", "year", "density"]:
            raise ValueError(f"{path}: expected header 'age,year,density'")
        rows = [(float(r[0]), float(r[1]), float(r[2])) for r in reader if r]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    ages = np.unique([r[0] for r in rows])
    years = np.unique([r[1] for r in rows])
    if len(rows) != ages.size * years.size:
        raise ValueError(f"{path}: not a complete age x year lattice")
    values = np.array([r[2] for r in rows]).reshape(ages.size, years.size)
    return ages, years, values
