"""Command-line front door: exact solving, single matches, sweeps,
density certification, and the HTTP service."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from satgame.engine import MAX, MINI, MatchAbortedError, play_match
from satgame.families import parse_family
from satgame.lab.experiments import ExperimentConfig, run_experiments
from satgame.solver import sat_g_exact
from satgame.strategies import parse_strategy


@click.group()
def main():
    """Laboratory for forbidden-cycle saturation games."""


@main.command()
@click.option("--n", "ns", type=int, multiple=True, required=True)
@click.option("--family", "families", multiple=True, required=True)
@click.option(
    "--first", "firsts", type=click.Choice([MAX, MINI]), multiple=True, default=(MAX,)
)
def solve(ns, families, firsts):
    """Exact game values via full minimax."""
    for family in families:
        for n in ns:
            for first in firsts:
                result = sat_g_exact(n, family, first)
                click.echo(
                    f"n={n} family={family} first={first} "
                    f"satg={result.value} states={result.states_expanded}"
                )


@main.command()
@click.option("--family", required=True)
@click.option("--n", type=int, required=True)
@click.option("--max", "max_spec", required=True, help="strategy for the Max seat")
@click.option("--mini", "mini_spec", required=True, help="strategy for the Mini seat")
@click.option("--first", type=click.Choice([MAX, MINI]), default=MAX)
@click.option("--audit/--no-audit", default=True)
@click.option("--seed", type=int, default=None, help="recorded in the match file")
@click.option("--out", type=click.Path(path_type=Path), default=None)
def play(family, n, max_spec, mini_spec, first, audit, seed, out):
    """Play one match to saturation and emit its record."""
    by_seat = {MAX: parse_strategy(max_spec), MINI: parse_strategy(mini_spec)}
    second = MINI if first == MAX else MAX
    try:
        record = play_match(
            n, family, first, by_seat[first], by_seat[second], audits=audit, seed=seed
        )
    except MatchAbortedError as exc:
        click.echo(f"match aborted: {exc}", err=True)
        sys.exit(1)
    text = record.to_json()
    if out is None:
        click.echo(text)
    else:
        out.write_text(text)
        click.echo(f"wrote {out}")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
@click.option("--workers", type=int, default=None)
def sweep(config_path, workers):
    """Run an experiment grid from a JSON config."""
    config = ExperimentConfig.from_json(config_path)
    rows = run_experiments(config, workers=workers)
    bad = [r for r in rows if r["audits_failed"] or r["bound_ok"] is False]
    click.echo(f"{len(rows)} matches -> {config.out_dir}/summary.csv")
    if bad:
        click.echo(f"{len(bad)} matches with violations", err=True)
        sys.exit(1)


@main.command("check-dense")
@click.option("--family", required=True)
@click.option("--k", type=int, required=True)
@click.option("--horizon", type=int, default=200)
def check_dense(family, k, horizon):
    """Certify (or refute) that a family is k-dense."""
    from satgame.families import certify_k_dense

    certificate = certify_k_dense(parse_family(family), k, horizon)
    click.echo(certificate.summary())
    if not certificate.dense:
        sys.exit(1)


@main.command()
@click.option("--port", type=int, default=8080)
@click.option("--host", default="127.0.0.1")
def serve(port, host):
    """Run the interactive HTTP service."""
    import uvicorn

    from satgame.lab.service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
