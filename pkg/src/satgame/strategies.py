"""Playing strategies: the two constructive defenses, the path prolonger,
and baseline adversaries.

Each strategy implements a small protocol consumed by the match runner:
`begin_match` / `validate_family` at setup, `choose` per turn (None means
"no legal move: verify saturation"), `audit` after own moves, and
`edge_bound` for the final bound comparison.  Strategies never play on
silently after a structural failure; impossible branches raise
StrategyError with the full position.
"""

from __future__ import annotations

import random

from satgame.engine import (
    GameState,
    LegalityCache,
    absent_pairs,
    legal_moves,
    legality_on_graph,
)
from satgame.families import CycleFamily, certify_k_dense
from satgame.graph import Graph, blocks, block_distance, longest_path
from satgame.structure import analyze, check_triangle_invariants, is_k_fantastic


class StrategyError(RuntimeError):
    """A strategy reached a position its supporting argument rules out."""

    def __init__(self, message: str, graph: Graph | None = None):
        if graph is not None:
            message = f"{message}\nposition:\n{graph.to_text()}"
        super().__init__(message)
        self.graph = graph


class StrategyFamilyError(ValueError):
    """Family does not satisfy the strategy's hypothesis."""


class Strategy:
    spec: str = "?"

    def begin_match(self, state: GameState, cache: LegalityCache) -> None:
        self.cache = cache

    def validate_family(self, family: CycleFamily) -> None:
        pass

    def choose(self, state: GameState) -> tuple[int, int] | None:
        raise NotImplementedError

    def audit(self, state: GameState) -> list[dict]:
        return []

    def edge_bound(self, n: int) -> int | None:
        return None

    def _legal(self, state: GameState, u: int, v: int) -> bool:
        return self.cache.is_legal(state.graph, state.family, u, v)

    def _first_legal(self, state: GameState) -> tuple[int, int] | None:
        for u, v in absent_pairs(state.graph):
            if self._legal(state, u, v):
                return (u, v)
        return None


def parse_strategy(spec: str) -> Strategy:
    spec = spec.strip()
    head, _, arg = spec.partition(":")
    params: dict[str, int] = {}
    if arg:
        try:
            for piece in arg.split(","):
                key, _, val = piece.partition("=")
                params[key.strip()] = int(val)
        except ValueError as exc:
            raise ValueError(f"bad strategy spec {spec!r}: {exc}") from exc
    if head == "fantastic":
        return FantasticStrategy(k=params["k"])
    if head == "triangle":
        return TriangleStrategy(k=params["k"])
    if head == "prolonger":
        return ProlongerStrategy(k=params["k"], s=params["s"])
    if head == "random":
        return RandomStrategy(seed=params.get("seed", 0))
    if head == "greedy":
        return GreedyProlongStrategy()
    raise ValueError(f"unknown strategy {spec!r}")


def _anchor(state: GameState) -> int:
    return min(state.history[0].pair())


class FantasticStrategy(Strategy):
    """Keep the graph k-fantastic at the end of every own turn."""

    def __init__(self, k: int):
        self.k = k
        self.spec = f"fantastic:k={k}"

    def validate_family(self, family: CycleFamily) -> None:
        cert = certify_k_dense(family, self.k)
        if not cert.dense:
            raise StrategyFamilyError(
                f"{family} is not {self.k}-dense: {cert.failure}"
            )

    def edge_bound(self, n: int) -> int | None:
        return (self.k - 1) * (n - 1) // 2 + 1

    def choose(self, state: GameState) -> tuple[int, int] | None:
        g, k = state.graph, self.k
        if not state.history:
            return (0, 1)
        h = _anchor(state)

        view = analyze(g, h, k)
        if not is_k_fantastic(view):
            # Case 0: the opponent left us a fantastic graph (or we open)
            return self._retaining_move(state, view)

        # classify the opponent's edge against the pre-move annotation
        last = state.history[-1]
        u, v = last.pair()
        pre_graph = Graph(g.n, g.edges - {(u, v)})
        pre = analyze(pre_graph, h, k)
        in_i = lambda x: x in pre.I
        in_h = lambda x: x in pre.H and x != h

        if in_i(u) and in_i(v):
            # Case 1: two isolated vertices; attach the smaller one to h
            x = min(u, v)
            return (min(x, h), max(x, h))

        if h in (u, v):
            other = v if u == h else u
            if in_i(other):
                # Case 2b: pair the new leaf with the old leaf at h
                leaves = [
                    y for y in pre_graph.adjacency[h] if pre_graph.degree(y) == 1
                ]
                if leaves:
                    x = min(leaves)
                    return (min(other, x), max(other, x))
            raise StrategyError(
                f"edge ({u},{v}) at h should have left the graph fantastic", g
            )

        u_f = u in pre.F and u != h
        v_f = v in pre.F and v != h
        if (u_f and in_i(v)) or (v_f and in_i(u)):
            # Case 3: F-vertex to isolated vertex
            f, i = (u, v) if u_f else (v, u)
            return self._case_3(state, pre, f, i)

        if (in_h(u) and in_i(v)) or (in_h(v) and in_i(u)):
            # Case 4: H-vertex to isolated vertex
            x = u if in_h(u) else v
            return self._case_4(state, pre, x)

        if in_h(u) and in_h(v):
            return self._case_5(state, view, pre, u, v)

        raise StrategyError(
            f"edge ({u},{v}) reached an impossible classification "
            f"(F-H at block distance >= 2 cannot be legal)", g
        )

    def _retaining_move(self, state: GameState, view) -> tuple[int, int] | None:
        g, h = state.graph, view.h
        nearly = [b for b in view.blocks if b.nearly_h_dominated]
        if nearly:
            adj_h = set(g.adjacency[h])
            missing = min(
                x
                for b in nearly
                for x in b.vertices
                if x != h and x not in adj_h
            )
            return (min(h, missing), max(h, missing))
        isolated = sorted(view.I)
        if isolated:
            x = isolated[0]
            leaves = [y for y in g.adjacency[h] if g.degree(y) == 1]
            if leaves:
                y = min(leaves)
                return (min(x, y), max(x, y))
            return (min(x, h), max(x, h))
        open_umbrellas = [um for um in view.umbrellas if not um.finished]
        if open_umbrellas:
            y = min(um.handle for um in open_umbrellas)
            return (min(y, h), max(y, h))
        # the graph is all F: any legal move keeps it fantastic
        move = self._first_legal(state)
        return move  # None means saturated; the runner verifies

    def _case_3(self, state: GameState, pre, f: int, i: int) -> tuple[int, int]:
        rooted_unfinished = []
        unfinished_in = []
        for b in pre.blocks:
            if b.root == f and not b.is_finished_block():
                rooted_unfinished.append(b)
            if (
                b.root is not None
                and f in b.vertices
                and f != b.root
                and f not in b.finished_vertices
            ):
                unfinished_in.append(b)
        if rooted_unfinished:
            # 3a: tie the new vertex to an unfinished vertex of that block
            b = rooted_unfinished[0]
            x = min(
                x
                for x in b.vertices
                if x != b.root and x not in b.finished_vertices
            )
            return (min(i, x), max(i, x))
        if unfinished_in:
            # 3b: tie the new vertex to the root of f's block
            r = min(b.root for b in unfinished_in)
            return (min(i, r), max(i, r))
        raise StrategyError(
            f"case 3 reached with finished F-vertex {f}; graph should be fantastic",
            state.graph,
        )

    def _case_4(self, state: GameState, pre, x: int) -> tuple[int, int]:
        g, h = state.graph, pre.h
        for b in pre.blocks:
            if b.nearly_h_dominated and x in b.vertices:
                # 4a: complete the nearly dominated block at h
                adj_h = set(g.adjacency[h])
                m = next(y for y in sorted(b.vertices) if y != h and y not in adj_h)
                return (min(h, m), max(h, m))
        for um in pre.umbrellas:
            if um.finished:
                continue
            members = pre.blocks[um.canopy].vertices | pre.blocks[um.handle_edge].vertices
            if x in members:
                # 4b: close the umbrella through its handle
                return (min(um.handle, h), max(um.handle, h))
        raise StrategyError(f"case 4: vertex {x} not in any H structure", g)

    def _case_5(self, state: GameState, view, pre, u: int, v: int) -> tuple[int, int]:
        g, h, k = state.graph, pre.h, self.k
        handles = {um.handle for um in pre.umbrellas if not um.finished}
        in_nearly = {}
        for b in pre.blocks:
            if b.nearly_h_dominated:
                for x in b.vertices:
                    in_nearly[x] = b
        umbrella_of = {}
        for um in pre.umbrellas:
            if um.finished:
                continue
            for x in pre.blocks[um.canopy].vertices | pre.blocks[um.handle_edge].vertices:
                umbrella_of.setdefault(x, um)

        def non_handle_umbrella(x):
            return x in umbrella_of and x not in handles

        if non_handle_umbrella(u) or non_handle_umbrella(v):
            # Case 5b
            a, b_ = (u, v) if non_handle_umbrella(u) else (v, u)
            if b_ in in_nearly or b_ in handles:
                merged = view.block_of_edge(u, v)
                adj_h = set(g.adjacency[h])
                missing = [
                    x for x in merged.vertices if x != h and x not in adj_h
                ]
                if len(missing) == 1:
                    return (min(h, missing[0]), max(h, missing[0]))
                raise StrategyError(
                    f"case 5b: merged block not nearly dominated (missing {missing})",
                    g,
                )
            # both endpoints ride umbrellas; close whichever handle still can
            merged = view.block_of_edge(u, v)
            for handle in sorted(
                {umbrella_of[u].handle, umbrella_of[v].handle}
            ):
                attach = next(
                    um.attach for um in pre.umbrellas if um.handle == handle
                )
                if attach not in merged.finished_vertices:
                    return (min(handle, h), max(handle, h))
            raise StrategyError(
                "case 5b: both umbrella necks finished; graph should be fantastic",
                g,
            )

        # Case 5c: distinct nearly dominated blocks and/or umbrella handles
        if k == 5:
            raise StrategyError(
                "case 5c is impossible for k=5 (no nearly dominated blocks "
                "and handle-handle edges close a C5)", g,
            )
        merged = view.block_of_edge(u, v)
        adj_h = set(g.adjacency[h])
        candidates = sorted(
            x for x in merged.vertices if x != h and x not in adj_h
        )
        if not candidates:
            raise StrategyError("case 5c: no vertex of the merged block misses h", g)
        return (min(h, candidates[0]), max(h, candidates[0]))

    def audit(self, state: GameState) -> list[dict]:
        g = state.graph
        if not state.history:
            return []
        h = _anchor(state)
        view = analyze(g, h, self.k)
        violations = is_k_fantastic(view)
        entries = [
            {
                "check": "k-fantastic",
                "pass": not violations,
                "detail": "; ".join(str(v) for v in violations),
            }
        ]
        if self.k == 5:
            nearly = [b for b in view.blocks if b.nearly_h_dominated]
            entries.append(
                {
                    "check": "no-nearly-dominated",
                    "pass": not nearly,
                    "detail": "; ".join(
                        str(tuple(sorted(b.vertices))) for b in nearly
                    ),
                }
            )
        return entries


class TriangleStrategy(Strategy):
    """Maintain triangle-rich blocks and short bridge chains."""

    def __init__(self, k: int):
        self.k = k
        self.spec = f"triangle:k={k}"

    def validate_family(self, family: CycleFamily) -> None:
        if family.is_forbidden(3):
            raise StrategyFamilyError(f"{family} forbids C3")
        if family.is_finite():
            raise StrategyFamilyError(
                f"{family} is finite: long cycle pairs eventually all allowed"
            )
        for ell in range(max(self.k, 3), self.k + 1000):
            if not (family.is_forbidden(ell) or family.is_forbidden(ell + 1)):
                raise StrategyFamilyError(
                    f"{family} misses both C_{ell} and C_{ell + 1} (k={self.k})"
                )

    def edge_bound(self, n: int) -> int | None:
        return (3 * self.k - 1) * (n - 1) // 2

    def _bridge_components(self, g: Graph):
        decomp = blocks(g)
        bridge_edges = [tuple(sorted(b)) for b in decomp.blocks if len(b) == 2]
        adj: dict[int, list[int]] = {}
        for a, b in bridge_edges:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        seen: set[int] = set()
        comps = []
        for start in sorted(adj):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(
                (comp, [e for e in bridge_edges if e[0] in comp], adj)
            )
        return comps

    def _triangle_over_bridges(self, state, edges, adj, anchor=None):
        """Smallest legal chord closing a triangle over two adjacent bridges.

        When `anchor` is given, the chord must cover that edge.
        """
        options = []
        for a, b in edges:
            for mid, far in ((a, b), (b, a)):
                for w in adj.get(far, []):
                    if w == mid:
                        continue
                    if anchor is not None and tuple(sorted((mid, far))) != anchor:
                        continue
                    options.append(tuple(sorted((mid, w))))
        for mv in sorted(set(options)):
            if not state.graph.has_edge(*mv) and self._legal(state, *mv):
                return mv
        return None

    def choose(self, state: GameState) -> tuple[int, int] | None:
        g = state.graph
        if not g.edges:
            return (0, 1)
        decomp = blocks(g)

        # a triangle-free non-K2 block can only be the unique C4 the
        # opponent just closed: add a diagonal
        for b in decomp.blocks:
            if len(b) == 2:
                continue
            sub = g.induced(b)
            if any(
                set(sub.adjacency[x]) & set(sub.adjacency[y])
                for x, y in sub.edges
            ):
                continue
            diags = sorted(
                (x, y)
                for x in b
                for y in b
                if x < y and not g.has_edge(x, y)
            )
            for mv in diags:
                if self._legal(state, *mv):
                    return mv
            return self._fallback(state)

        comps = self._bridge_components(g)
        nontrivial = [(c, e, adj) for c, e, adj in comps if len(e) >= 2]
        bad = [
            (c, e, adj)
            for c, e, adj in nontrivial
            if len(e) > 3 or any(len(adj[x]) > 2 for x in c)
        ]
        if len(nontrivial) > 1 or bad:
            # the opponent's bridge broke the chain rule: triangulate over
            # their edge
            last = state.history[-1].pair() if state.history else None
            for c, e, adj in bad or nontrivial:
                if last is not None and last in e:
                    mv = self._triangle_over_bridges(state, e, adj, anchor=last)
                    if mv:
                        return mv
            for c, e, adj in bad or nontrivial:
                mv = self._triangle_over_bridges(state, e, adj)
                if mv:
                    return mv
            return self._fallback(state)

        if nontrivial:
            # free move: shorten the one bridge chain into a triangle
            c, e, adj = nontrivial[0]
            mv = self._triangle_over_bridges(state, e, adj)
            if mv:
                return mv
        move = self._first_legal(state)
        return move

    def _fallback(self, state: GameState) -> tuple[int, int]:
        """Exhaustive scan for any legal invariant-restoring move."""
        for u, v in absent_pairs(state.graph):
            if not self._legal(state, u, v):
                continue
            if not check_triangle_invariants(state.graph.add_edge(u, v)):
                return (u, v)
        raise StrategyError(
            "no legal move restores the triangle invariants", state.graph
        )

    def audit(self, state: GameState) -> list[dict]:
        violations = check_triangle_invariants(state.graph)
        return [
            {
                "check": "triangle-invariants",
                "pass": not violations,
                "detail": "; ".join(str(v) for v in violations),
            }
        ]


class ProlongerStrategy(Strategy):
    """Grow a longest path to k' = 3+(k-2)(s-2) vertices, then strike."""

    def __init__(self, k: int, s: int):
        if k < 5 or s < 3:
            raise ValueError("prolonger needs k >= 5 and s >= 3")
        self.k = k
        self.s = s
        self.k_prime = 3 + (k - 2) * (s - 2)
        self.spec = f"prolonger:k={k},s={s}"

    def begin_match(self, state, cache):
        super().begin_match(state, cache)
        self.struck = False
        self.findings: list[dict] = []

    def validate_family(self, family: CycleFamily) -> None:
        top = 4 + (self.k - 2) * (self.s - 2) + 2 * (self.k - 2) ** 2
        for ell in range(max(self.s, 3), top + 1):
            if family.is_forbidden(ell):
                raise StrategyFamilyError(
                    f"{family} forbids C_{ell} inside the window "
                    f"[{self.s},{top}]"
                )

    def choose(self, state: GameState) -> tuple[int, int] | None:
        g = state.graph
        if not g.edges:
            return (0, 1)
        path = longest_path(g).vertices
        if not self.struck and len(path) >= self.k_prime:
            strike = tuple(sorted((path[0], path[self.k_prime - 1])))
            if self._legal(state, *strike):
                self.struck = True
                return strike
            self.findings.append(
                {
                    "check": "strike-legal",
                    "pass": False,
                    "detail": f"strike {strike} rejected on path {path}",
                }
            )
        if len(path) < self.k_prime:
            isolated = [x for x in range(g.n) if not g.adjacency[x]]
            if isolated:
                x = isolated[0]
                end = path[-1]
                return (min(end, x), max(end, x))
            for end in (path[-1], path[0]):
                for w in range(g.n):
                    if w in path or g.has_edge(end, w):
                        continue
                    if self._legal(state, end, w):
                        return (min(end, w), max(end, w))
        return self._first_legal(state)

    def audit(self, state: GameState) -> list[dict]:
        out, self.findings = self.findings, []
        return out


class RandomStrategy(Strategy):
    """Uniform choice over the legal moves, seed-deterministic."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.spec = f"random:seed={seed}"

    def begin_match(self, state, cache):
        super().begin_match(state, cache)
        self.rng = random.Random(self.seed)

    def choose(self, state: GameState) -> tuple[int, int] | None:
        moves = legal_moves(state, self.cache)
        if not moves:
            return None
        return self.rng.choice(moves)


class GreedyProlongStrategy(Strategy):
    """Play the legal move leaving the most legal moves, ties lexicographic.

    Successor counts are computed per component: a bridge between two
    components only re-ranks pairs that straddle it, and an intra-component
    edge only re-ranks pairs inside that component (cross-component pairs
    are always legal).
    """

    spec = "greedy"

    def _components(self, g: Graph) -> list[list[int]]:
        comps: dict[int, list[int]] = {}
        for v in range(g.n):
            comps.setdefault(g.component_ids[v], []).append(v)
        return list(comps.values())

    def _length_sets(self, g: Graph, source: int, comp: list[int]) -> dict[int, set[int]]:
        """Lengths of simple paths from source to every other comp vertex."""
        out: dict[int, set[int]] = {x: set() for x in comp}
        adj = g.adjacency
        on_path = [False] * g.n
        on_path[source] = True
        stack = [(source, 0, 0)]
        while stack:
            x, depth, idx = stack[-1]
            nbrs = adj[x]
            moved = False
            while idx < len(nbrs):
                y = nbrs[idx]
                idx += 1
                if on_path[y]:
                    continue
                out[y].add(depth + 1)
                stack[-1] = (x, depth, idx)
                on_path[y] = True
                stack.append((y, depth + 1, 0))
                moved = True
                break
            if not moved:
                stack.pop()
                on_path[x] = False
        return out

    def choose(self, state: GameState) -> tuple[int, int] | None:
        g, fam = state.graph, state.family
        comps = self._components(g)
        comp_of = g.component_ids
        comp_by_id: dict[int, list[int]] = {comp_of[c[0]]: c for c in comps}

        within: dict[int, list[tuple[int, int]]] = {}
        for comp in comps:
            if len(comp) < 2:
                continue
            cid = comp_of[comp[0]]
            pairs = []
            for i, a in enumerate(sorted(comp)):
                for b in sorted(comp)[i + 1:]:
                    if not g.has_edge(a, b) and self.cache.is_legal(g, fam, a, b):
                        pairs.append((a, b))
            within[cid] = pairs

        sizes = {cid: len(c) for cid, c in comp_by_id.items()}
        total_cross = 0
        ids = list(sizes)
        for i, ci in enumerate(ids):
            for cj in ids[i + 1:]:
                total_cross += sizes[ci] * sizes[cj]
        total = total_cross + sum(len(p) for p in within.values())
        if total == 0:
            return None

        lsets: dict[int, dict[int, set[int]]] = {}

        def length_sets(x: int) -> dict[int, set[int]]:
            if x not in lsets:
                lsets[x] = self._length_sets(g, x, comp_by_id[comp_of[x]])
            return lsets[x]

        cross_memo: dict[tuple[int, int], int] = {}

        def cross_killed(x: int, y: int) -> int:
            # all singleton components are interchangeable
            kx = x if sizes[comp_of[x]] > 1 else -1
            ky = y if sizes[comp_of[y]] > 1 else -1
            key = (kx, ky) if kx <= ky else (ky, kx)
            if key in cross_memo:
                return cross_memo[key]
            lx, ly = length_sets(x), length_sets(y)
            killed = 0
            for a, la in lx.items():
                la_all = la | ({0} if a == x else set())
                if not la_all:
                    continue
                for b, lb in ly.items():
                    if a == x and b == y:
                        continue
                    lb_all = lb | ({0} if b == y else set())
                    if any(
                        p + q + 2 >= 3 and fam.is_forbidden(p + q + 2)
                        for p in la_all
                        for q in lb_all
                    ):
                        killed += 1
            cross_memo[key] = killed
            return killed

        adj = g.adjacency

        def within_killed(u: int, v: int) -> int:
            """Count legal intra-component pairs the edge uv would kill.

            A pair (a,b) flips to illegal only via an a-b path through uv,
            and every such path splits as a..u, uv, v..b; enumerate the
            halves vertex-disjointly instead of re-deciding each pair.
            """
            targets = {f for f in within[comp_of[u]] if f != (u, v)}
            if not targets:
                return 0
            mark = [False] * g.n
            mark[u] = mark[v] = True
            killset: set[tuple[int, int]] = set()

            def go_right(a: int, left_edges: int, x: int, right_edges: int):
                for y in adj[x]:
                    if mark[y]:
                        continue
                    # a..u (left_edges) + uv + v..y (right_edges+1) + closing ay
                    cyc = left_edges + right_edges + 3
                    pair = (a, y) if a < y else (y, a)
                    if (
                        pair in targets
                        and pair not in killset
                        and fam.is_forbidden(cyc)
                    ):
                        killset.add(pair)
                        if len(killset) == len(targets):
                            return
                    mark[y] = True
                    go_right(a, left_edges, y, right_edges + 1)
                    mark[y] = False
                    if len(killset) == len(targets):
                        return

            def go_left(x: int, left_edges: int):
                if left_edges > 0:
                    # the right half may be empty: pair (x, v) closes a..u-v
                    pair = (x, v) if x < v else (v, x)
                    if (
                        pair in targets
                        and pair not in killset
                        and fam.is_forbidden(left_edges + 2)
                    ):
                        killset.add(pair)
                        if len(killset) == len(targets):
                            return
                go_right(x, left_edges, v, 0)
                if len(killset) == len(targets):
                    return
                for y in adj[x]:
                    if mark[y]:
                        continue
                    mark[y] = True
                    go_left(y, left_edges + 1)
                    mark[y] = False
                    if len(killset) == len(targets):
                        return

            go_left(u, 0)
            return len(killset)

        best_move = None
        best_value = -1
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if g.has_edge(u, v):
                    continue
                if comp_of[u] == comp_of[v]:
                    if (u, v) not in within.get(comp_of[u], ()):
                        continue
                    value = total - 1 - within_killed(u, v)
                else:
                    value = total - 1 - cross_killed(u, v)
                if value > best_value:
                    best_value = value
                    best_move = (u, v)
        return best_move
