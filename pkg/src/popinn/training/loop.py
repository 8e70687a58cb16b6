"""The epoch loop: resample, evaluate losses and gradients, Adam step."""
from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from ..demography import Domain, InitialProfile, MortalityModel, Quadrature, scenario_by_name
from ..errors import NumericError
from .adam import AdamState, adam_step
from .checkpoint import Checkpoint
from .losses import LossWeights, loss_bc, loss_ic, loss_pde, total_loss
from .models import build_surrogate
from .sampling import KIND_CODES, SamplerConfig, sample_points

__all__ = ["EpochRecord", "TrainResult", "train", "write_loss_csv", "read_loss_csv"]


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    total: float
    pde: float
    ic: float
    bc: float


@dataclass
class TrainResult:
    records: list
    checkpoint: Checkpoint
    surrogate: object


def train(
    model_kind: str,
    scenario,
    *,
    epochs: int = 10000,
    seed: int = 0,
    lr: float = 5e-4,
    sampler: SamplerConfig | None = None,
    weights: LossWeights | None = None,
    domain: Domain | None = None,
    mortality_model: MortalityModel | None = None,
    profile: InitialProfile | None = None,
    quad: Quadrature | None = None,
    widths=None,
    lstm_layers: int = 4,
    lstm_hidden: int = 64,
    dropout: float = 0.1,
    threshold: float | None = None,
    reaction_scale: float = 1.0,
    on_epoch=None,
) -> TrainResult:
    """Train a surrogate; returns per-epoch records and a final checkpoint.

    Stops at the epoch cap, or earlier once the total loss falls to or
    below ``threshold`` (disabled when None).
    """
    if isinstance(scenario, str):
        scenario = scenario_by_name(scenario)
    sampler = sampler or SamplerConfig(seed=seed)
    weights = weights or LossWeights()
    domain = domain or Domain()
    mortality_model = mortality_model or MortalityModel()
    profile = profile if profile is not None else InitialProfile()
    quad = quad or Quadrature()

    surrogate = build_surrogate(
        model_kind,
        widths=widths,
        num_layers=lstm_layers,
        hidden=lstm_hidden,
        dropout=dropout,
        seed=seed,
    )
    params = surrogate.get_flat()
    state = AdamState(lr=lr)
    records: list[EpochRecord] = []

    for epoch in range(1, epochs + 1):
        if surrogate.kind == "lstm":
            surrogate.train_mode(np.random.default_rng([sampler.seed, epoch, KIND_CODES["dropout"]]))
        a_int, t_int = sample_points(sampler, "interior", epoch)
        a_ini, _ = sample_points(sampler, "initial", epoch)
        _, t_bnd = sample_points(sampler, "boundary", epoch)

        try:
            l1, g1 = loss_pde(surrogate, a_int, t_int, domain, mortality_model, reaction_scale)
            l2, g2 = loss_ic(surrogate, a_ini, profile, domain, weights.epsilon0)
            l3, g3 = loss_bc(surrogate, t_bnd, scenario, quad, domain)
        except NumericError as exc:
            raise NumericError(
                f"training aborted at epoch {epoch}: {exc} "
                f"(|params|={float(np.linalg.norm(params)):.6g}, "
                f"last total={records[-1].total if records else float('nan'):.6g})"
            ) from exc

        total = total_loss((l1, l2, l3), weights)
        if not np.isfinite(total):
            raise NumericError(
                f"training aborted at epoch {epoch}: non-finite loss "
                f"(pde={l1:.6g}, ic={l2:.6g}, bc={l3:.6g})"
            )
        grad = weights.lambda1 * g1 + weights.lambda2 * g2 + weights.lambda3 * g3
        params = adam_step(state, params, grad)
        surrogate.set_flat(params)

        rec = EpochRecord(epoch, total, l1, l2, l3)
        records.append(rec)
        if on_epoch is not None:
            on_epoch(rec)
        if threshold is not None and total <= threshold:
            break

    if surrogate.kind == "lstm":
        surrogate.eval_mode()
    cp = Checkpoint(
        kind=surrogate.kind,
        arch=surrogate.arch(),
        params=surrogate.get_flat(),
        domain=domain,
        scenario=scenario.name,
        seed=seed,
        epoch=records[-1].epoch if records else 0,
    )
    return TrainResult(records, cp, surrogate)


def write_loss_csv(path, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["epoch", "total", "pde", "ic", "bc"])
        for r in records:
            writer.writerow([r.epoch, repr(r.total), repr(r.pde), repr(r.ic), repr(r.bc)])


def read_loss_csv(path) -> list:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["epoch", "total", "pde", "ic", "bc"]:
            raise ValueError(f"{path}: expected loss CSV header epoch,total,pde,ic,bc")
        return [
            EpochRecord(int(r[0]), float(r[1]), float(r[2]), float(r[3]), float(r[4]))
            for r in reader
            if r
        ]
