"""Command-line experiment runner.

Exit codes: 0 success, 2 invalid spec or unknown preset, 3 register cap
exceeded, 4 I/O failure.  The output directory comes from ``--out-dir``,
falling back to the ``QDARWIN_OUT_DIR`` environment variable, then ``.``.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .experiments import (
    DEFAULT_SEED,
    ExperimentSpec,
    ResourceCapError,
    SpecError,
    preset_descriptions,
    run_preset,
    run_sweep,
)

EXIT_INVALID_SPEC = 2
EXIT_RESOURCE_CAP = 3
EXIT_IO = 4


def _resolve_out_dir(out_dir: str | None) -> Path:
    if out_dir is not None:
        return Path(out_dir)
    return Path(os.environ.get("QDARWIN_OUT_DIR", "."))


def _run_guarded(fn):
    try:
        return fn()
    except ResourceCapError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_RESOURCE_CAP)
    except SpecError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INVALID_SPEC)
    except OSError as exc:
        click.echo(f"I/O error: {exc}", err=True)
        sys.exit(EXIT_IO)


def _common_options(fn):
    fn = click.option(
        "--seed", type=int, default=DEFAULT_SEED, show_default=True,
        help="Root sampling seed (results are deterministic in it).",
    )(fn)
    fn = click.option(
        "--out-dir", type=click.Path(file_okay=False), default=None,
        help="Output directory [default: $QDARWIN_OUT_DIR or .].",
    )(fn)
    fn = click.option(
        "--threads", type=int, default=0, show_default=True,
        help="Worker threads for sweep points (0 = auto).",
    )(fn)
    fn = click.option(
        "--budget-fragments", type=int, default=None,
        help="Max fragments per size (default 1000; smaller counts enumerate).",
    )(fn)
    fn = click.option(
        "--budget-partitions", type=int, default=None,
        help="Max (B, C) partitions (default 1000; smaller counts enumerate).",
    )(fn)
    return fn


@click.group()
@click.version_option(__version__)
def main():
    """Collision-model quantum Darwinism / scrambling experiments."""


@main.command("list-presets")
def list_presets():
    """List the available figure presets."""
    for name, description in sorted(preset_descriptions().items()):
        click.echo(f"{name:8s} {description}")


@main.command("run")
@click.argument("preset")
@_common_options
def run_cmd(preset, seed, out_dir, threads, budget_fragments, budget_partitions):
    """Run a figure preset (see list-presets)."""

    def body():
        files = run_preset(
            preset,
            _resolve_out_dir(out_dir),
            seed=seed,
            threads=threads,
            budget_fragments=budget_fragments,
            budget_partitions=budget_partitions,
        )
        for path in files:
            click.echo(str(path))

    _run_guarded(body)


@main.command("sweep")
@click.option(
    "--config", "config_path", required=True,
    type=click.Path(exists=False, dir_okay=False),
    help="Flat JSON object mirroring the experiment spec fields.",
)
@_common_options
def sweep_cmd(config_path, seed, out_dir, threads, budget_fragments, budget_partitions):
    """Run a generic sweep described by a JSON config file.

    CLI flags override config values; --seed overrides only when given
    explicitly.
    """

    def body():
        try:
            raw = json.loads(Path(config_path).read_text())
        except FileNotFoundError as exc:
            raise SpecError(f"config file not found: {config_path}") from exc
        except json.JSONDecodeError as exc:
            raise SpecError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise SpecError("config must be a flat JSON object")
        raw.setdefault("name", Path(config_path).stem)
        ctx = click.get_current_context()
        if ctx.get_parameter_source("seed").name != "DEFAULT":
            raw["seed"] = seed
        raw.setdefault("seed", DEFAULT_SEED)
        if budget_fragments is not None:
            raw["budget_fragments"] = budget_fragments
        if budget_partitions is not None:
            raw["budget_partitions"] = budget_partitions
        spec = ExperimentSpec.from_dict(raw)
        for path in run_sweep(spec, _resolve_out_dir(out_dir), threads=threads):
            click.echo(str(path))

    _run_guarded(body)


if __name__ == "__main__":  # pragma: no cover
    main()
