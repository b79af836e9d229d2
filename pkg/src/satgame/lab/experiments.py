"""Experiment sweeps: a grid of matches, one JSON record per cell plus a
CSV summary of edge counts against the strategy bounds and audit rates."""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

from satgame.engine import MAX, MINI, MatchRecord, play_match
from satgame.families import parse_family
from satgame.strategies import parse_strategy


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep grid.  Strategy specs may contain `{seed}`, filled per cell,
    so one pairing entry covers a whole seed series."""

    families: tuple[str, ...]
    ns: tuple[int, ...]
    pairings: tuple[tuple[str, str], ...]
    seeds: tuple[int, ...] = (0,)
    first_mover: str = MAX
    audits: bool = True
    out_dir: Path = field(default_factory=lambda: Path("experiments"))

    @classmethod
    def from_json(cls, path: str | Path) -> "ExperimentConfig":
        data = json.loads(Path(path).read_text())
        return cls(
            families=tuple(data["families"]),
            ns=tuple(data["ns"]),
            pairings=tuple((a, b) for a, b in data["pairings"]),
            seeds=tuple(data.get("seeds", [0])),
            first_mover=data.get("first_mover", MAX),
            audits=data.get("audits", True),
            out_dir=Path(data.get("out_dir", "experiments")),
        )

    def validate(self):
        if self.first_mover not in (MAX, MINI):
            raise ValueError("first_mover must be max or mini")
        for n in self.ns:
            if n < 2:
                raise ValueError(f"n must be at least 2, got {n}")
        for fam in self.families:
            parse_family(fam)
        seed = self.seeds[0] if self.seeds else 0
        for a, b in self.pairings:
            parse_strategy(a.format(seed=seed))
            parse_strategy(b.format(seed=seed))

    def cells(self):
        return list(product(self.families, self.ns, self.pairings, self.seeds))


def _run_cell(args) -> MatchRecord:
    family, n, (spec_a, spec_b), seed, first_mover, audits = args
    first = parse_strategy(spec_a.format(seed=seed))
    second = parse_strategy(spec_b.format(seed=seed))
    return play_match(n, family, first_mover, first, second, audits=audits, seed=seed)


def _record_filename(record: MatchRecord) -> str:
    strategies = "-vs-".join(record.strategies)
    return f"{record.family}_{record.n}_{strategies}_{record.seed}.json"


def _summary_row(record: MatchRecord) -> dict:
    failed = sum(1 for a in record.audits if not a["pass"])
    return {
        "family": record.family,
        "n": record.n,
        "first": record.strategies[0],
        "second": record.strategies[1],
        "seed": record.seed,
        "moves": len(record.moves),
        "edges": record.final["edges"],
        "circumference": record.final["circumference"],
        "bound": record.final["bound"],
        "bound_ok": record.final["bound_ok"],
        "audits": len(record.audits),
        "audits_failed": failed,
    }


SUMMARY_COLUMNS = [
    "family", "n", "first", "second", "seed", "moves", "edges",
    "circumference", "bound", "bound_ok", "audits", "audits_failed",
]


def run_experiments(config: ExperimentConfig, workers: int | None = None) -> list[dict]:
    """Run the sweep, write one record file per match plus summary.csv,
    and return the summary rows."""
    config.validate()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    jobs = [
        (family, n, pairing, seed, config.first_mover, config.audits)
        for family, n, pairing, seed in config.cells()
    ]
    if workers is not None and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_run_cell, jobs))
    else:
        records = [_run_cell(job) for job in jobs]

    rows = []
    for record in records:
        (config.out_dir / _record_filename(record)).write_text(record.to_json())
        rows.append(_summary_row(record))
    with open(config.out_dir / "summary.csv", "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=SUMMARY_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    return rows
