"""Referee for the forbidden-cycle saturation game.

Legality with witness cycles, move application with alternation checking,
saturation detection, and full match orchestration producing replayable
MatchRecords.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from satgame.families import CycleFamily, parse_family
from satgame.graph import Graph, _Budget, block_geodesic

MAX = "max"
MINI = "mini"


class IllegalMoveError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class WrongMoverError(ValueError):
    pass


class MatchAbortedError(RuntimeError):
    """A strategy produced an illegal/absent move or gave up prematurely."""

    def __init__(self, message: str, record: "MatchRecord | None" = None):
        super().__init__(message)
        self.record = record


@dataclass(frozen=True)
class Move:
    u: int
    v: int
    mover: str

    def pair(self) -> tuple[int, int]:
        return (self.u, self.v) if self.u < self.v else (self.v, self.u)


@dataclass(frozen=True)
class GameState:
    graph: Graph
    family: CycleFamily
    first_mover: str = MAX
    history: tuple[Move, ...] = ()

    @classmethod
    def new(cls, n: int, family: CycleFamily | str, first_mover: str = MAX) -> "GameState":
        if isinstance(family, str):
            family = parse_family(family)
        if first_mover not in (MAX, MINI):
            raise ValueError(f"first_mover must be {MAX!r} or {MINI!r}")
        return cls(graph=Graph.empty(n), family=family, first_mover=first_mover)

    @property
    def next_mover(self) -> str:
        if len(self.history) % 2 == 0:
            return self.first_mover
        return MINI if self.first_mover == MAX else MAX


@dataclass(frozen=True)
class Legality:
    legal: bool
    witness: tuple[int, ...] | None = None  # cycle as vertex list, closing edge implied


def _edge_block_vertices(g: Graph, u: int, v: int) -> frozenset[int]:
    """Vertex set of the block that edge uv would form in g+uv.

    Adding uv fuses exactly the blocks along the u-v block geodesic
    (every vertex of a fused block lies on some u-v cycle through uv),
    so the scope comes from the cached decomposition of g itself.
    """
    out: set[int] = set()
    for b in block_geodesic(g, u, v):
        out |= b
    return frozenset(out)


def legality_on_graph(
    g: Graph, family: CycleFamily, u: int, v: int, budget: _Budget | None = None
) -> Legality:
    """Would adding uv close a forbidden cycle?

    Illegal iff some simple u-v path of length l-1 exists with C_l forbidden.
    The search runs inside the block that uv would join (any closing cycle
    lives there) under deterministic ascending-neighbor DFS, so the witness
    is reproducible.
    """
    if u == v:
        raise ValueError("loop move")
    if g.has_edge(u, v):
        raise IllegalMoveError(f"edge ({u},{v}) already present")
    if not g.same_component(u, v):
        return Legality(legal=True)
    u, v = min(u, v), max(u, v)
    scope = _edge_block_vertices(g, u, v)
    bud = budget or _Budget()
    adj = g.adjacency
    on_path = [False] * g.n
    on_path[u] = True
    path = [u]

    def dfs(x: int) -> tuple[int, ...] | None:
        for y in adj[x]:
            if y not in scope or on_path[y]:
                continue
            bud.spend()
            if y == v:
                cycle_len = len(path) + 1
                if cycle_len >= 3 and family.is_forbidden(cycle_len):
                    return tuple(path) + (v,)
                continue
            on_path[y] = True
            path.append(y)
            found = dfs(y)
            path.pop()
            on_path[y] = False
            if found:
                return found
        return None

    witness = dfs(u)
    if witness is not None:
        return Legality(legal=False, witness=witness)
    return Legality(legal=True)


def legality(s: GameState, u: int, v: int) -> Legality:
    return legality_on_graph(s.graph, s.family, u, v)


class LegalityCache:
    """Per-match memo of illegal pairs.

    Sound because illegality is monotone under edge addition: a witness
    cycle never disappears.  Legal verdicts are never cached.
    """

    def __init__(self):
        self._illegal: set[tuple[int, int]] = set()

    def check(self, g: Graph, family: CycleFamily, u: int, v: int) -> Legality:
        pair = (u, v) if u < v else (v, u)
        if pair in self._illegal:
            return Legality(legal=False)
        verdict = legality_on_graph(g, family, u, v)
        if not verdict.legal:
            self._illegal.add(pair)
        return verdict

    def is_legal(self, g: Graph, family: CycleFamily, u: int, v: int) -> bool:
        return self.check(g, family, u, v).legal


def absent_pairs(g: Graph):
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not g.has_edge(u, v):
                yield (u, v)


def legal_moves(s: GameState, cache: LegalityCache | None = None) -> list[tuple[int, int]]:
    cache = cache or LegalityCache()
    return [
        (u, v)
        for u, v in absent_pairs(s.graph)
        if cache.is_legal(s.graph, s.family, u, v)
    ]


def has_legal_move(s: GameState, cache: LegalityCache | None = None) -> bool:
    cache = cache or LegalityCache()
    return any(
        cache.is_legal(s.graph, s.family, u, v) for u, v in absent_pairs(s.graph)
    )


def is_saturated(s: GameState, cache: LegalityCache | None = None) -> bool:
    return not has_legal_move(s, cache)


def apply_move(s: GameState, u: int, v: int, mover: str) -> GameState:
    if mover != s.next_mover:
        raise WrongMoverError(f"it is {s.next_mover}'s turn, not {mover}'s")
    verdict = legality(s, u, v)
    if not verdict.legal:
        raise IllegalMoveError(
            f"move ({u},{v}) closes a forbidden cycle of length {len(verdict.witness)}",
            witness=verdict.witness,
        )
    u, v = min(u, v), max(u, v)
    return replace(
        s,
        graph=s.graph.add_edge(u, v),
        history=s.history + (Move(u, v, mover),),
    )


@dataclass
class MatchRecord:
    """Replayable record of one match, serialized per the fixed JSON schema."""

    n: int
    family: str
    first_mover: str
    strategies: tuple[str, str]
    seed: int | None
    moves: list[dict]
    audits: list[dict]
    final: dict

    def to_json(self, indent: int | None = 2) -> str:
        payload = {
            "n": self.n,
            "family": self.family,
            "first_mover": self.first_mover,
            "strategies": list(self.strategies),
            "seed": self.seed,
            "moves": self.moves,
            "audits": self.audits,
            "final": self.final,
        }
        return json.dumps(payload, indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "MatchRecord":
        data = json.loads(text)
        return cls(
            n=data["n"],
            family=data["family"],
            first_mover=data["first_mover"],
            strategies=tuple(data["strategies"]),
            seed=data["seed"],
            moves=data["moves"],
            audits=data["audits"],
            final=data["final"],
        )

    def replay(self) -> GameState:
        state = GameState.new(self.n, self.family, self.first_mover)
        for mv in self.moves:
            state = apply_move(state, mv["u"], mv["v"], mv["mover"])
        return state


def play_match(
    n: int,
    family: CycleFamily | str,
    first_mover: str,
    strategy_first,
    strategy_second,
    audits: bool = True,
    seed: int | None = None,
    stop_when=None,
    max_moves: int | None = None,
) -> MatchRecord:
    """Run a match to saturation (or until `stop_when` fires).

    `strategy_first` plays as `first_mover`.  When `audits` is on, each
    strategy's `audit(state)` hook runs after that strategy's own moves and
    its findings are appended to the record.
    """
    from satgame.graph import circumference  # local import to keep module load light

    state = GameState.new(n, family, first_mover)
    strategies = (strategy_first, strategy_second)
    cache = LegalityCache()
    for strat in strategies:
        strat.begin_match(state, cache)
        strat.validate_family(state.family)

    moves: list[dict] = []
    audit_log: list[dict] = []
    while True:
        if max_moves is not None and len(moves) >= max_moves:
            break
        idx = len(state.history) % 2
        strat = strategies[idx]
        mover = state.next_mover
        move = strat.choose(state)
        if move is None:
            if is_saturated(state, cache):
                break
            raise MatchAbortedError(
                f"strategy {strat.spec!r} passed on a non-saturated position "
                f"after {len(moves)} moves"
            )
        u, v = move
        try:
            state = apply_move(state, u, v, mover)
        except (IllegalMoveError, ValueError) as exc:
            raise MatchAbortedError(
                f"strategy {strat.spec!r} proposed bad move ({u},{v}): {exc}"
            ) from exc
        moves.append({"u": min(u, v), "v": max(u, v), "mover": mover})
        if audits:
            for entry in strat.audit(state):
                entry = dict(entry)
                entry["t"] = len(moves)
                audit_log.append(entry)
        if stop_when is not None and stop_when(state):
            break

    bounds = [
        b for b in (strat.edge_bound(n) for strat in strategies) if b is not None
    ]
    bound = min(bounds) if bounds else None
    edges = state.graph.edge_count()
    final = {
        "edges": edges,
        "circumference": circumference(state.graph),
        "bound": bound,
        "bound_ok": (edges <= bound) if bound is not None else None,
    }
    return MatchRecord(
        n=n,
        family=state.family.spec,
        first_mover=first_mover,
        strategies=(strategy_first.spec, strategy_second.spec),
        seed=seed,
        moves=moves,
        audits=audit_log,
        final=final,
    )
