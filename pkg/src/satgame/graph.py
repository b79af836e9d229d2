"""Undirected simple graphs with block decomposition and exact path queries.

Everything here is a pure function of immutable inputs.  The exponential
searches (simple-path enumeration, longest path, circumference) run under
an expansion budget so pathological inputs fail loudly instead of hanging
or silently truncating.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np

DEFAULT_BUDGET = 5_000_000

CANONICAL_N_LIMIT = 10


class NoPathError(ValueError):
    """Raised when a path query is made for a disconnected vertex pair."""


class BudgetExceededError(RuntimeError):
    """A search exceeded its node-expansion budget.

    Never a silent wrong answer: callers either raise this or return an
    exact result.
    """


def expansion_budget() -> int:
    """Current node-expansion budget (SATGAME_BUDGET overrides the default)."""
    raw = os.environ.get("SATGAME_BUDGET")
    if raw:
        return int(raw)
    return DEFAULT_BUDGET


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: int | None = None):
        self.remaining = expansion_budget() if limit is None else limit

    def spend(self, amount: int = 1) -> None:
        self.remaining -= amount
        if self.remaining < 0:
            raise BudgetExceededError(
                "search expansion budget exhausted (raise SATGAME_BUDGET to retry)"
            )


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range or unordered for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, pairs) -> "Graph":
        return cls(n, frozenset(_normalize_edge(u, v) for u, v in pairs))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, frozenset())

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def add_edge(self, u: int, v: int) -> "Graph":
        e = _normalize_edge(u, v)
        if e in self.edges:
            raise ValueError(f"edge {e} already present")
        return Graph(self.n, self.edges | {e})

    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adjacency[v]]

    def induced(self, vertices) -> "Graph":
        """Subgraph induced on `vertices`, keeping the original labels.

        Vertices outside the set become isolated; n is unchanged so labels
        stay stable across derived queries.
        """
        vs = set(vertices)
        kept = frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)
        return Graph(self.n, kept)

    @cached_property
    def component_ids(self) -> tuple[int, ...]:
        comp = [-1] * self.n
        cid = 0
        for start in range(self.n):
            if comp[start] != -1:
                continue
            comp[start] = cid
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self.adjacency[x]:
                    if comp[y] == -1:
                        comp[y] = cid
                        queue.append(y)
            cid += 1
        return tuple(comp)

    def same_component(self, u: int, v: int) -> bool:
        return self.component_ids[u] == self.component_ids[v]

    def component_of(self, v: int) -> frozenset[int]:
        cid = self.component_ids[v]
        return frozenset(x for x in range(self.n) if self.component_ids[x] == cid)

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        lines.extend(f"{u} {v}" for u, v in self.sorted_edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("graph text must start with 'n=<count>'")
        n = int(lines[0][2:])
        pairs = []
        for ln in lines[1:]:
            u, v = ln.split()
            pairs.append((int(u), int(v)))
        return cls.from_edges(n, pairs)


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (maximal 2-connected subgraphs or K2s), cut vertices, block tree.

    `block_tree` maps a cut vertex to the indices of the blocks containing
    it; non-cut vertices are absent.
    """

    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    block_tree: dict[int, tuple[int, ...]]

    def blocks_containing(self, v: int) -> list[int]:
        if v in self.block_tree:
            return list(self.block_tree[v])
        return [i for i, b in enumerate(self.blocks) if v in b]

    @cached_property
    def membership(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, b in enumerate(self.blocks):
            for x in b:
                out.setdefault(x, []).append(i)
        return {x: tuple(ids) for x, ids in out.items()}

    @cached_property
    def block_cuts(self) -> tuple[tuple[int, ...], ...]:
        """Per block, the cut vertices it contains (block-cut tree edges)."""
        return tuple(
            tuple(c for c in b if c in self.cut_vertices) for b in self.blocks
        )

    def is_k2(self, i: int) -> bool:
        return len(self.blocks[i]) == 2


@dataclass(frozen=True)
class Path:
    """Simple path given as its ordered vertex list."""

    vertices: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def validate(self, g: Graph) -> None:
        vs = self.vertices
        if len(set(vs)) != len(vs):
            raise ValueError("repeated vertex in path")
        for a, b in zip(vs, vs[1:]):
            if not g.has_edge(a, b):
                raise ValueError(f"non-edge ({a},{b}) in path")


@lru_cache(maxsize=4096)
def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected components via iterative Tarjan lowpoint DFS.

    Memoized on the (immutable) graph: callers repeatedly decompose the
    same position while scanning candidate moves.
    """
    n = g.n
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    is_cut = [False] * n
    edge_stack: list[tuple[int, int]] = []
    block_edge_sets: list[list[tuple[int, int]]] = []
    timer = 0

    for root in range(n):
        if disc[root] != -1 or not adj[root]:
            continue
        root_children = 0
        stack = [(root, iter(adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                if disc[v] == -1:
                    parent[v] = u
                    if u == root:
                        root_children += 1
                    edge_stack.append((u, v))
                    disc[v] = low[v] = timer
                    timer += 1
                    stack.append((v, iter(adj[v])))
                    advanced = True
                    break
                elif v != parent[u] and disc[v] < disc[u]:
                    edge_stack.append((u, v))
                    if disc[v] < low[u]:
                        low[u] = disc[v]
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
                if low[u] >= disc[p]:
                    # p separates the subtree at u: pop one block
                    comp = []
                    while edge_stack:
                        e = edge_stack.pop()
                        comp.append(e)
                        if e == (p, u):
                            break
                    block_edge_sets.append(comp)
                    if p != root:
                        is_cut[p] = True
        if root_children > 1:
            is_cut[root] = True

    block_vertex_sets = tuple(
        frozenset(itertools.chain.from_iterable(es)) for es in block_edge_sets
    )
    cuts = frozenset(v for v in range(n) if is_cut[v])
    tree: dict[int, list[int]] = {c: [] for c in cuts}
    for i, b in enumerate(block_vertex_sets):
        for v in b:
            if v in cuts:
                tree[v].append(i)
    return BlockDecomposition(
        blocks=block_vertex_sets,
        cut_vertices=cuts,
        block_tree={c: tuple(sorted(ids)) for c, ids in tree.items()},
    )


def _geodesic_block_indices(g: Graph, decomp: BlockDecomposition, u: int, v: int) -> list[int]:
    if u == v:
        raise ValueError("block geodesic requires distinct endpoints")
    if not g.same_component(u, v):
        raise NoPathError(f"no path between {u} and {v}")
    # Nodes of the block-cut tree: ("b", i) for blocks, ("v", c) for cut vertices.
    membership = decomp.membership

    def start_node(x: int):
        if x in decomp.cut_vertices:
            return ("v", x)
        ids = membership.get(x)
        if not ids:
            raise NoPathError(f"vertex {x} is isolated")
        return ("b", ids[0])

    src, dst = start_node(u), start_node(v)
    if src == dst:
        return [src[1]] if src[0] == "b" else []
    prev: dict = {src: None}
    queue = deque([src])
    while queue:
        node = queue.popleft()
        if node == dst:
            break
        if node[0] == "b":
            nxt = (("v", c) for c in decomp.block_cuts[node[1]])
        else:
            nxt = (("b", i) for i in decomp.block_tree[node[1]])
        for nb in nxt:
            if nb not in prev:
                prev[nb] = node
                queue.append(nb)
    if dst not in prev:
        raise NoPathError(f"no path between {u} and {v}")
    chain = []
    node = dst
    while node is not None:
        chain.append(node)
        node = prev[node]
    chain.reverse()
    return [i for kind, i in chain if kind == "b"]


def block_geodesic(g: Graph, u: int, v: int) -> list[frozenset[int]]:
    """The unique block sequence traversed by any u-v path."""
    decomp = blocks(g)
    idxs = _geodesic_block_indices(g, decomp, u, v)
    return [decomp.blocks[i] for i in idxs]


def block_distance(g: Graph, u: int, v: int) -> int:
    return len(block_geodesic(g, u, v))


def distance(g: Graph, u: int, v: int) -> int:
    """Shortest path length between u and v (BFS)."""
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    raise NoPathError(f"no path between {u} and {v}")


def distances_from(g: Graph, source: int) -> dict[int, int]:
    """BFS distances from `source` to every vertex in its component."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def path_length_set(
    g: Graph,
    u: int,
    v: int,
    cap: int | None = None,
    budget: _Budget | None = None,
) -> set[int]:
    """Exactly the lengths of simple u-v paths, up to `cap` (None = unbounded)."""
    if u == v:
        raise ValueError("path_length_set requires distinct endpoints")
    if not g.same_component(u, v):
        return set()
    bud = budget or _Budget()
    adj = g.adjacency
    lengths: set[int] = set()
    on_path = [False] * g.n
    on_path[u] = True
    stack: list[tuple[int, int, int]] = [(u, 0, 0)]  # (vertex, depth, next-neighbor index)
    while stack:
        x, depth, idx = stack[-1]
        nbrs = adj[x]
        moved = False
        while idx < len(nbrs):
            y = nbrs[idx]
            idx += 1
            if on_path[y]:
                continue
            bud.spend()
            if y == v:
                lengths.add(depth + 1)
                continue
            if cap is not None and depth + 1 >= cap:
                continue
            stack[-1] = (x, depth, idx)
            on_path[y] = True
            stack.append((y, depth + 1, 0))
            moved = True
            break
        if not moved:
            stack.pop()
            on_path[x] = False
    return lengths


def has_path_of_length(g: Graph, u: int, v: int, length: int, budget: _Budget | None = None) -> bool:
    """True iff a simple u-v path of exactly `length` edges exists (early exit)."""
    if length < 1 or u == v:
        return False
    if not g.same_component(u, v):
        return False
    bud = budget or _Budget()
    adj = g.adjacency
    on_path = [False] * g.n
    on_path[u] = True

    def dfs(x: int, depth: int) -> bool:
        for y in adj[x]:
            if on_path[y]:
                continue
            bud.spend()
            if y == v:
                if depth + 1 == length:
                    return True
                continue
            if depth + 1 >= length:
                continue
            on_path[y] = True
            if dfs(y, depth + 1):
                return True
            on_path[y] = False
        return False

    return dfs(u, 0)


def exists_avoiding_path(
    g: Graph,
    scope,
    avoid: int | None,
    start: int,
    length: int,
    budget: _Budget | None = None,
) -> bool:
    """True iff the subgraph on scope minus `avoid` has a simple path of
    length >= `length` starting at `start` (depth-limited, early exit)."""
    if length <= 0:
        return True
    allowed = set(scope)
    if avoid is not None:
        allowed.discard(avoid)
    if start not in allowed:
        raise ValueError(f"start {start} not in scope after removing avoided vertex")
    if len(allowed) - 1 < length:
        return False
    bud = budget or _Budget()
    adj = g.adjacency
    on_path = {start}

    def dfs(x: int, depth: int) -> bool:
        if depth >= length:
            return True
        for y in adj[x]:
            if y not in allowed or y in on_path:
                continue
            bud.spend()
            on_path.add(y)
            if dfs(y, depth + 1):
                return True
            on_path.discard(y)
        return False

    return dfs(start, 0)


def _longest_path_between(g: Graph, u: int, v: int, scope, bud: _Budget) -> int:
    """Longest simple u-v path within `scope`; -1 if none."""
    allowed = set(scope)
    adj = g.adjacency
    best = -1
    on_path = {u}

    def dfs(x: int, depth: int):
        nonlocal best
        for y in adj[x]:
            if y not in allowed or y in on_path:
                continue
            bud.spend()
            if y == v:
                if depth + 1 > best:
                    best = depth + 1
                continue
            on_path.add(y)
            dfs(y, depth + 1)
            on_path.discard(y)
        return

    dfs(u, 0)
    return best


def circumference(g: Graph, budget: _Budget | None = None) -> int:
    """Length of the longest cycle; 0 for forests."""
    bud = budget or _Budget()
    decomp = blocks(g)
    best = 0
    for b in decomp.blocks:
        if len(b) < 3:
            continue
        sub = g.induced(b)
        for u, v in sorted(sub.edges):
            # longest u-v path not using the edge itself, closed by it
            trimmed = Graph(g.n, sub.edges - {(u, v)})
            length = _longest_path_between(trimmed, u, v, b, bud)
            if length >= 2 and length + 1 > best:
                best = length + 1
    return best


def longest_path(g: Graph, budget: _Budget | None = None) -> Path:
    """A maximum-length simple path, lexicographically smallest among maxima."""
    if not g.edges:
        raise ValueError("longest_path requires at least one edge")
    bud = budget or _Budget()
    adj = g.adjacency
    best: list[int] = []
    current: list[int] = []
    on_path = [False] * g.n

    def dfs(x: int):
        nonlocal best
        extended = False
        for y in adj[x]:
            if on_path[y]:
                continue
            bud.spend()
            extended = True
            on_path[y] = True
            current.append(y)
            dfs(y)
            current.pop()
            on_path[y] = False
        if not extended and len(current) > len(best):
            best = list(current)

    for start in range(g.n):
        if not adj[start]:
            continue
        on_path[start] = True
        current.append(start)
        dfs(start)
        current.pop()
        on_path[start] = False
    return Path(tuple(best))


@lru_cache(maxsize=8)
def _all_permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def _triu_indices(n: int):
    return np.triu_indices(n, k=1)


def canonical_code(g: Graph, limit: int = CANONICAL_N_LIMIT) -> bytes:
    """Isomorphism-invariant code: lexicographically minimal row-major
    upper-triangle adjacency bitstring over all vertex permutations."""
    n = g.n
    if n > limit:
        raise ValueError(f"canonical_code limited to n <= {limit}, got {n}")
    if n <= 1:
        return b""
    adj = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges:
        adj[u, v] = adj[v, u] = 1
    rows, cols = _triu_indices(n)
    nbits = len(rows)
    weights = 1 << np.arange(nbits - 1, -1, -1, dtype=np.int64)

    def batch_min(perms: np.ndarray) -> int:
        permuted = adj[perms[:, :, None], perms[:, None, :]]
        bits = permuted[:, rows, cols]
        return int((bits @ weights).min())

    if n <= 8:
        best = batch_min(_all_permutations(n))
    else:
        best = None
        it = itertools.permutations(range(n))
        while True:
            chunk = list(itertools.islice(it, 100_000))
            if not chunk:
                break
            val = batch_min(np.array(chunk, dtype=np.int64))
            if best is None or val < best:
                best = val
        assert best is not None
    nbytes = (nbits + 7) // 8
    return (best << (nbytes * 8 - nbits)).to_bytes(nbytes, "big")
