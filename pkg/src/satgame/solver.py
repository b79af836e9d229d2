"""Exact game values and brute-force extremal oracles at small n.

sat_g_exact runs full minimax over the game tree with isomorphism
memoization.  sat_exact/ex_exact enumerate saturated graphs outright,
by edge-subset filtering for n <= 6 and by incremental growth of
cycle-free graphs for n = 7.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from satgame.engine import MAX, MINI, absent_pairs, legality_on_graph
from satgame.families import CycleFamily, parse_family
from satgame.graph import Graph, canonical_code

SAT_G_LIMIT = 8
ENUM_LIMIT = 7


@dataclass(frozen=True)
class SolveResult:
    n: int
    family: str
    first_mover: str
    value: int
    principal_variation: tuple[tuple[int, int], ...]
    states_expanded: int
    memo_hits: int


def _as_family(family: CycleFamily | str) -> CycleFamily:
    return parse_family(family) if isinstance(family, str) else family


def _mover_at(edge_count: int, first_mover: str) -> str:
    if edge_count % 2 == 0:
        return first_mover
    return MINI if first_mover == MAX else MAX


def sat_g_exact(
    n: int,
    family: CycleFamily | str,
    first_mover: str = MAX,
    limit: int = SAT_G_LIMIT,
    use_memo: bool = True,
) -> SolveResult:
    """Minimax value of the saturation game: final edge count under
    optimal play, Max maximizing and Mini minimizing.

    Positions are memoized by canonical code alone; the mover follows
    from edge-count parity once first_mover is fixed, so each mover
    convention gets its own table.
    """
    if first_mover not in (MAX, MINI):
        raise ValueError(f"first_mover must be {MAX!r} or {MINI!r}")
    if n > limit:
        raise ValueError(f"n={n} exceeds solver limit {limit}")
    fam = _as_family(family)
    memo: dict[bytes, int] = {}
    stats = {"expanded": 0, "hits": 0}

    def solve(g: Graph) -> int:
        if use_memo:
            key = canonical_code(g)
            cached = memo.get(key)
            if cached is not None:
                stats["hits"] += 1
                return cached
        stats["expanded"] += 1
        children = [
            (u, v)
            for u, v in absent_pairs(g)
            if legality_on_graph(g, fam, u, v).legal
        ]
        if not children:
            value = g.edge_count()
        else:
            best = max if _mover_at(g.edge_count(), first_mover) == MAX else min
            value = best(solve(g.add_edge(u, v)) for u, v in children)
        if use_memo:
            memo[key] = value
        return value

    root = Graph.empty(n)
    value = solve(root)

    # rebuild the line of play along smallest optimal moves; the memo
    # is hot so the re-solves are lookups
    pv: list[tuple[int, int]] = []
    g = root
    while True:
        children = [
            (u, v)
            for u, v in absent_pairs(g)
            if legality_on_graph(g, fam, u, v).legal
        ]
        if not children:
            break
        target = solve(g)
        for u, v in children:
            if solve(g.add_edge(u, v)) == target:
                pv.append((u, v))
                g = g.add_edge(u, v)
                break
    assert g.edge_count() == value

    return SolveResult(
        n=n,
        family=fam.spec,
        first_mover=first_mover,
        value=value,
        principal_variation=tuple(pv),
        states_expanded=stats["expanded"],
        memo_hits=stats["hits"],
    )


def _is_family_free(n: int, fam: CycleFamily, edges: tuple[tuple[int, int], ...]) -> bool:
    # insert in ascending order: the largest edge of any forbidden cycle
    # closes it, so a bad graph always trips a legality check
    g = Graph.empty(n)
    for u, v in edges:
        if not legality_on_graph(g, fam, u, v).legal:
            return False
        g = g.add_edge(u, v)
    return True


def _is_saturated_graph(g: Graph, fam: CycleFamily) -> bool:
    return all(
        not legality_on_graph(g, fam, u, v).legal for u, v in absent_pairs(g)
    )


def _extremes_by_subsets(n: int, fam: CycleFamily) -> tuple[int, int]:
    pairs = list(combinations(range(n), 2))
    lo, hi = None, None
    for mask in range(1 << len(pairs)):
        edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
        if not _is_family_free(n, fam, edges):
            continue
        g = Graph.empty(n)
        for u, v in edges:
            g = g.add_edge(u, v)
        if not _is_saturated_graph(g, fam):
            continue
        m = len(edges)
        lo = m if lo is None else min(lo, m)
        hi = m if hi is None else max(hi, m)
    if lo is None:
        raise RuntimeError(f"no saturated graph found for n={n}, {fam.spec}")
    return lo, hi


def _extremes_incremental(n: int, fam: CycleFamily) -> tuple[int, int]:
    """Walk all cycle-free graphs by adding legal edges in ascending
    order (each graph has exactly one such build sequence) and record
    the edge counts of the saturated ones.

    Known-illegal pairs are inherited downward: illegality is monotone
    under edge addition.
    """
    pairs = list(combinations(range(n), 2))
    index = {p: i for i, p in enumerate(pairs)}
    lo, hi = None, None

    def walk(g: Graph, start: int, illegal: frozenset[tuple[int, int]]):
        nonlocal lo, hi
        found = set()
        saturated = True
        for i, (u, v) in enumerate(pairs):
            if g.has_edge(u, v):
                continue
            if (u, v) in illegal:
                continue
            if not legality_on_graph(g, fam, u, v).legal:
                found.add((u, v))
                continue
            saturated = False
            if i >= start:
                walk(g.add_edge(u, v), i + 1, illegal | frozenset(found))
        if saturated:
            m = g.edge_count()
            lo = m if lo is None else min(lo, m)
            hi = m if hi is None else max(hi, m)

    walk(Graph.empty(n), 0, frozenset())
    if lo is None:
        raise RuntimeError(f"no saturated graph found for n={n}, {fam.spec}")
    return lo, hi


def _saturated_extremes(n: int, family: CycleFamily | str, limit: int) -> tuple[int, int]:
    if n > limit:
        raise ValueError(f"n={n} exceeds enumeration limit {limit}")
    fam = _as_family(family)
    return _extremes_cached(n, fam.spec)


@lru_cache(maxsize=256)
def _extremes_cached(n: int, spec: str) -> tuple[int, int]:
    fam = parse_family(spec)
    if n <= 6:
        return _extremes_by_subsets(n, fam)
    return _extremes_incremental(n, fam)


def sat_exact(n: int, family: CycleFamily | str, limit: int = ENUM_LIMIT) -> int:
    """Minimum edge count over all saturated n-vertex graphs."""
    return _saturated_extremes(n, family, limit)[0]


def ex_exact(n: int, family: CycleFamily | str, limit: int = ENUM_LIMIT) -> int:
    """Maximum edge count over all saturated n-vertex graphs."""
    return _saturated_extremes(n, family, limit)[1]


def verify_chain(n: int, family: CycleFamily | str) -> dict:
    """Check sat <= sat_g <= ex for both mover conventions."""
    fam = _as_family(family)
    lo, hi = _saturated_extremes(n, fam, ENUM_LIMIT)
    game = {
        mover: sat_g_exact(n, fam, first_mover=mover).value for mover in (MAX, MINI)
    }
    ok = all(lo <= game[mover] <= hi for mover in (MAX, MINI))
    report = {
        "n": n,
        "family": fam.spec,
        "sat": lo,
        "ex": hi,
        "sat_g": game,
        "ok": ok,
    }
    if not ok:
        raise AssertionError(f"chain violated: {report}")
    return report
