"""Per-epoch collocation sampling with reproducible per-kind streams."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SamplerConfig", "sample_points", "KIND_CODES"]

KIND_CODES = {"interior": 0, "initial": 1, "boundary": 2, "dropout": 3}


@dataclass(frozen=True)
class SamplerConfig:
    n_interior: int = 5000
    m_initial: int = 2000
    k_boundary: int = 2000
    seed: int = 0

    def __post_init__(self):
        if min(self.n_interior, self.m_initial, self.k_boundary) < 1:
            raise ValueError("all sample counts must be >= 1")


def stream(config: SamplerConfig, kind: str, epoch: int) -> np.random.Generator:
    """Generator keyed by (seed, epoch, kind): epochs differ, runs reproduce."""
    return np.random.default_rng([config.seed, int(epoch), KIND_CODES[kind]])


def sample_points(config: SamplerConfig, kind: str, epoch: int):
    """Uniform batch in normalized coordinates.  Returns (a_hat, tau)."""
    if kind not in ("interior", "initial", "boundary"):
        raise ValueError(f"unknown sample kind {kind!r}")
    rng = stream(config, kind, epoch)
    if kind == "interior":
        pts = rng.random((config.n_interior, 2))
        return pts[:, 0].copy(), pts[:, 1].copy()
    if kind == "initial":
        a = rng.random(config.m_initial)
        return a, np.zeros_like(a)
    tau = rng.random(config.k_boundary)
    return np.zeros_like(tau), tau
