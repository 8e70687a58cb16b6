"""Batch command-line front end.

Exit codes: 0 success, 2 usage/configuration error, 3 numeric failure
(CFL violation, non-finite values), 4 I/O error.
"""
from __future__ import annotations

import functools
import sys
from pathlib import Path

import click
import numpy as np

from . import plotting
from .config import RunConfig, parse_config_file, resolve_config, write_manifest
from .demography import Domain, InitialProfile, Quadrature, scenario_by_name
from .errors import CheckpointError, ConfigError, NumericError
from .reference import Field, GridSpec, load_field, relative_l2, save_field, solve_upwind
from .training import (
    SamplerConfig,
    LossWeights,
    load_checkpoint,
    save_checkpoint,
    surrogate_from_checkpoint,
    train,
    write_loss_csv,
    read_loss_csv,
)

EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def guarded(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ConfigError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)
        except NumericError as exc:
            click.echo(f"numeric failure: {exc}", err=True)
            sys.exit(EXIT_NUMERIC)
        except (CheckpointError, OSError) as exc:
            click.echo(f"i/o error: {exc}", err=True)
            sys.exit(EXIT_IO)
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


@click.group()
def main():
    """Physics-informed population surrogates and their reference solver."""


def _load_profile(path: str):
    return InitialProfile.from_csv(path) if path else InitialProfile()


def _out_dir(out: str) -> Path:
    p = Path(out)
    p.mkdir(parents=True, exist_ok=True)
    return p


@main.command("train")
@click.option("--model", type=str, default=None, help="pinn | lstm-pinn")
@click.option("--scenario", type=str, default=None)
@click.option("--epochs", type=int, default=None)
@click.option("--seed", type=int, default=None)
@click.option("--lr", type=float, default=None)
@click.option("--n-interior", type=int, default=None)
@click.option("--m-initial", type=int, default=None)
@click.option("--k-boundary", type=int, default=None)
@click.option("--quad-nodes", type=int, default=None)
@click.option("--widths", type=str, default=None, help="comma-separated layer widths")
@click.option("--lstm-layers", type=int, default=None)
@click.option("--lstm-hidden", type=int, default=None)
@click.option("--dropout", type=float, default=None)
@click.option("--lambda1", type=float, default=None)
@click.option("--lambda2", type=float, default=None)
@click.option("--lambda3", type=float, default=None)
@click.option("--eps0", type=float, default=None)
@click.option("--threshold", type=float, default=None, help="early-stop total loss")
@click.option("--physical-aging", is_flag=True, default=None)
@click.option("--profile", type=str, default=None, help="initial-profile CSV")
@click.option("--threads", type=int, default=None)
@click.option("--config", "config_path", type=str, default=None, help="key=value config file")
@click.option("--out", required=True, type=str, help="output directory")
@guarded
def cmd_train(config_path, out, **flags):
    """Train a surrogate; writes loss.csv, checkpoint.pfck, manifest.txt."""
    if flags.get("widths") is not None:
        try:
            flags["widths"] = tuple(int(p) for p in flags["widths"].split(","))
        except ValueError:
            raise ConfigError(f"widths must be comma-separated integers, got {flags['widths']!r}")
    file_pairs = parse_config_file(config_path) if config_path else {}
    cfg = resolve_config(file_pairs, flags)
    if not cfg.scenario:
        raise ConfigError("a scenario is required (--scenario or config file)")
    if cfg.model not in ("pinn", "lstm-pinn"):
        raise ConfigError(f"model must be 'pinn' or 'lstm-pinn', got {cfg.model!r}")
    if cfg.epochs < 0:
        raise ConfigError("epochs must be >= 0")
    if cfg.threads < 1:
        raise ConfigError("threads must be >= 1")
    scenario = scenario_by_name(cfg.scenario)
    domain = Domain()

    result = train(
        cfg.model,
        scenario,
        epochs=cfg.epochs,
        seed=cfg.seed,
        lr=cfg.lr,
        sampler=SamplerConfig(cfg.n_interior, cfg.m_initial, cfg.k_boundary, cfg.seed),
        weights=LossWeights(cfg.lambda1, cfg.lambda2, cfg.lambda3, cfg.eps0),
        domain=domain,
        profile=_load_profile(cfg.profile),
        quad=Quadrature(nodes=cfg.quad_nodes),
        widths=cfg.widths,
        lstm_layers=cfg.lstm_layers,
        lstm_hidden=cfg.lstm_hidden,
        dropout=cfg.dropout,
        threshold=cfg.threshold,
        reaction_scale=domain.span if cfg.physical_aging else 1.0,
    )
    out_p = _out_dir(out)
    write_loss_csv(out_p / "loss.csv", result.records)
    save_checkpoint(out_p / "checkpoint.pfck", result.checkpoint)
    write_manifest(out_p / "manifest.txt", cfg)
    click.echo(f"trained {cfg.model} for {len(result.records)} epochs -> {out_p}")


@main.command("reference")
@click.option("--scenario", required=True, type=str)
@click.option("--na", type=int, default=201, show_default=True)
@click.option("--nt", type=int, default=601, show_default=True)
@click.option("--quad-nodes", type=int, default=61, show_default=True)
@click.option("--profile", type=str, default="")
@click.option("--physical-aging", is_flag=True, default=False)
@click.option("--out", required=True, type=str, help="output directory")
@guarded
def cmd_reference(scenario, na, nt, quad_nodes, profile, physical_aging, out):
    """Run the upwind reference solver; writes field.csv."""
    domain = Domain()
    grid = GridSpec(na, nt, domain)
    f = solve_upwind(
        scenario_by_name(scenario),
        profile=_load_profile(profile),
        grid=grid,
        quad=Quadrature(nodes=quad_nodes),
        reaction_scale=domain.span if physical_aging else 1.0,
    )
    out_p = _out_dir(out)
    save_field(out_p / "field.csv", f)
    click.echo(f"solved {na}x{nt} field -> {out_p / 'field.csv'}")


@main.command("predict")
@click.option("--checkpoint", "checkpoint_path", required=True, type=str)
@click.option("--na", type=int, default=101, show_default=True)
@click.option("--nt", type=int, default=31, show_default=True)
@click.option("--out", required=True, type=str, help="output directory")
@guarded
def cmd_predict(checkpoint_path, na, nt, out):
    """Evaluate a trained surrogate on an age-time lattice; writes field.csv."""
    cp = load_checkpoint(checkpoint_path)
    surrogate = surrogate_from_checkpoint(cp)
    grid = GridSpec(na, nt, cp.domain, check_cfl=False)
    A, T = np.meshgrid(np.linspace(0, 1, na), np.linspace(0, 1, nt), indexing="ij")
    P, _ = surrogate.value_batch(A.ravel(), T.ravel())
    f = Field(P.reshape(na, nt), grid)
    out_p = _out_dir(out)
    save_field(out_p / "field.csv", f)
    click.echo(f"evaluated checkpoint on {na}x{nt} lattice -> {out_p / 'field.csv'}")


@main.command("compare")
@click.argument("field_a", type=str)
@click.argument("field_b", type=str)
@guarded
def cmd_compare(field_a, field_b):
    """Print relative L2 and max-abs difference of two field CSVs (B is the reference)."""
    ages_a, years_a, va = load_field(field_a)
    ages_b, years_b, vb = load_field(field_b)
    if va.shape != vb.shape or not np.array_equal(ages_a, ages_b) or not np.array_equal(years_a, years_b):
        raise ConfigError(f"lattice mismatch between {field_a} and {field_b}")
    rel = relative_l2(va, vb)
    max_abs = float(np.max(np.abs(va - vb)))
    click.echo(f"rel_l2={rel:.17g} max_abs={max_abs:.17g}")


@main.command("plot")
@click.argument("input_csv", type=str)
@click.option("--out", required=True, type=str, help="output SVG file")
@guarded
def cmd_plot(input_csv, out):
    """Render a field CSV as a heatmap or a loss CSV as log-scale curves."""
    with open(input_csv, newline="") as fh:
        header = fh.readline().strip()
    if header == "age,year,density":
        ages, years, values = load_field(input_csv)
        svg = plotting.render_field_svg(ages, years, values)
    elif header == "epoch,total,pde,ic,bc":
        svg = plotting.render_loss_svg(read_loss_csv(input_csv))
    else:
        raise ConfigError(f"{input_csv}: unrecognized CSV header {header!r}")
    Path(out).parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(svg + "\n")
    click.echo(f"wrote {out}")


if __name__ == "__main__":
    main()
