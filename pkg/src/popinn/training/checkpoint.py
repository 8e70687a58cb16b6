"""Versioned checkpoint container: magic 'PFCK', JSON metadata block, then
the flat parameter vector as little-endian float64."""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field

import numpy as np

from ..demography import Domain
from ..errors import CheckpointError
from .models import LstmSurrogate, MlpSurrogate

__all__ = ["Checkpoint", "save_checkpoint", "load_checkpoint", "surrogate_from_checkpoint"]

MAGIC = b"PFCK"
VERSION = 1


@dataclass
class Checkpoint:
    kind: str  # "mlp" | "lstm"
    arch: dict
    params: np.ndarray
    domain: Domain
    scenario: str
    seed: int
    epoch: int


def save_checkpoint(path, cp: Checkpoint) -> None:
    meta = {
        "kind": cp.kind,
        "arch": cp.arch,
        "domain": {"a0": cp.domain.a0, "t_min": cp.domain.t_min, "t_max": cp.domain.t_max},
        "scenario": cp.scenario,
        "seed": cp.seed,
        "epoch": cp.epoch,
    }
    blob = json.dumps(meta, sort_keys=True).encode("utf-8")
    params = np.ascontiguousarray(cp.params, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", VERSION))
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        fh.write(struct.pack("<Q", params.size))
        fh.write(params.tobytes())


def load_checkpoint(path) -> Checkpoint:
    with open(path, "rb") as fh:
        raw = fh.read()
    if len(raw) < 12 or raw[:4] != MAGIC:
        raise CheckpointError(f"{path}: not a checkpoint file (bad magic)")
    (version,) = struct.unpack_from("<I", raw, 4)
    if version != VERSION:
        raise CheckpointError(f"{path}: unsupported checkpoint version {version}")
    (meta_len,) = struct.unpack_from("<I", raw, 8)
    try:
        meta = json.loads(raw[12 : 12 + meta_len].decode("utf-8"))
        (n,) = struct.unpack_from("<Q", raw, 12 + meta_len)
        params = np.frombuffer(raw, dtype="<f8", count=n, offset=20 + meta_len).copy()
    except (ValueError, struct.error, UnicodeDecodeError) as exc:
        raise CheckpointError(f"{path}: malformed checkpoint ({exc})") from None
    if params.size != n:
        raise CheckpointError(f"{path}: truncated parameter block")
    d = meta.get("domain", {})
    return Checkpoint(
        kind=meta["kind"],
        arch=meta["arch"],
        params=params,
        domain=Domain(d.get("a0", 100.0), d.get("t_min", 2024.0), d.get("t_max", 2054.0)),
        scenario=meta.get("scenario", ""),
        seed=int(meta.get("seed", 0)),
        epoch=int(meta.get("epoch", 0)),
    )


def surrogate_from_checkpoint(cp: Checkpoint, expect_kind: str | None = None):
    """Rebuild an eval-mode surrogate whose outputs match bitwise."""
    if expect_kind is not None and cp.kind != expect_kind:
        raise CheckpointError(f"checkpoint holds a {cp.kind} model, expected {expect_kind}")
    if cp.kind == "mlp":
        s = MlpSurrogate.init(tuple(cp.arch["widths"]), seed=0)
    elif cp.kind == "lstm":
        s = LstmSurrogate.init(
            int(cp.arch["num_layers"]),
            int(cp.arch["hidden"]),
            seed=0,
            dropout_rate=float(cp.arch.get("dropout", 0.1)),
        )
    else:
        raise CheckpointError(f"unknown model kind {cp.kind!r} in checkpoint")
    if cp.params.size != s.n_params:
        raise CheckpointError(
            f"checkpoint has {cp.params.size} parameters, architecture needs {s.n_params}"
        )
    s.set_flat(cp.params)
    return s
