"""Run configuration with layered resolution.

Precedence: built-in defaults < config file < command-line flags.  The
config-file format (also used for run manifests) is flat ``key=value``
text, UTF-8, with ``#`` comments.  Defaults follow the full-scale setup:
5000/2000/2000 sampling points, 10000 epochs, learning rate 5e-4, widths
[2,128,128,64,1], a 4x64 LSTM with dropout 0.1, and unit loss weights.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

from .errors import ConfigError

__all__ = ["RunConfig", "parse_config_file", "resolve_config", "write_manifest"]


@dataclass
class RunConfig:
    model: str = "pinn"  # pinn | lstm-pinn
    scenario: str = ""
    epochs: int = 10000
    seed: int = 0
    lr: float = 5e-4
    n_interior: int = 5000
    m_initial: int = 2000
    k_boundary: int = 2000
    quad_nodes: int = 61
    widths: tuple = (2, 128, 128, 64, 1)
    lstm_layers: int = 4
    lstm_hidden: int = 64
    dropout: float = 0.1
    lambda1: float = 1.0
    lambda2: float = 1.0
    lambda3: float = 1.0
    eps0: float = 1e-2
    threshold: float | None = None
    physical_aging: bool = False
    profile: str = ""  # optional CSV path overriding the initial profile
    threads: int = 1


def _parse_value(name: str, text: str):
    text = text.strip()
    if name == "widths":
        try:
            return tuple(int(p) for p in text.split(","))
        except ValueError:
            raise ConfigError(f"widths must be comma-separated integers, got {text!r}") from None
    if name == "threshold":
        if text.lower() in ("none", ""):
            return None
        return _number(name, text, float)
    if name == "physical_aging":
        if text.lower() in ("true", "1", "yes"):
            return True
        if text.lower() in ("false", "0", "no"):
            return False
        raise ConfigError(f"physical_aging must be a boolean, got {text!r}")
    if name in ("model", "scenario", "profile"):
        return text
    if name in ("lr", "dropout", "lambda1", "lambda2", "lambda3", "eps0"):
        return _number(name, text, float)
    return _number(name, text, int)


def _number(name, text, typ):
    try:
        return typ(text)
    except ValueError:
        raise ConfigError(f"{name} must be a {typ.__name__}, got {text!r}") from None


_KNOWN = None


def _known_keys():
    global _KNOWN
    if _KNOWN is None:
        _KNOWN = {f.name for f in fields(RunConfig)}
    return _KNOWN


def parse_config_file(path) -> dict:
    """Read ``key=value`` pairs; unknown keys are rejected."""
    pairs = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = line.split("=", 1)
            key = key.strip()
            if key not in _known_keys():
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            pairs[key] = _parse_value(key, value)
    return pairs


def resolve_config(file_pairs: dict | None = None, flag_pairs: dict | None = None) -> RunConfig:
    """Layer file values then flag values over the defaults."""
    cfg = RunConfig()
    for source in (file_pairs or {}, flag_pairs or {}):
        for key, value in source.items():
            if value is None:
                continue
            if key not in _known_keys():
                raise ConfigError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    return cfg


def _format_value(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return ",".join(str(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_manifest(path, cfg: RunConfig) -> None:
    """The manifest fully determines a run; it is itself a valid config file."""
    lines = [f"{f.name}={_format_value(getattr(cfg, f.name))}" for f in fields(RunConfig)]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
