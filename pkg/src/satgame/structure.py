"""Structural annotations for the dense-family strategy.

Given an anchor vertex h and density parameter k this module derives the
full annotation a defender of small circumference needs: rooted blocks,
stems, finished vertices, nearly h-dominated blocks, h-umbrellas, and the
H/F/I partition.  `is_k_fantastic` turns the five structural properties
into checkable violations; `check_triangle_invariants` does the same for
the triangle-block strategy; `audit_path_lemmas` spot-checks the
path-length guarantees those structures are supposed to provide.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from satgame.graph import (
    Graph,
    blocks,
    block_geodesic,
    circumference,
    distances_from,
    exists_avoiding_path,
    has_path_of_length,
)

INF = float("inf")


@dataclass(frozen=True)
class BlockInfo:
    index: int
    vertices: frozenset[int]
    root: int | None  # dominating vertex strictly closest to h, if any
    nearly_h_dominated: bool
    finished_vertices: frozenset[int]  # w.r.t. the effective root
    umbrella_role: str | None = None  # "canopy" | "handle-edge"
    umbrella_id: int | None = None

    @property
    def is_k2(self) -> bool:
        return len(self.vertices) == 2

    @property
    def effective_root(self) -> int | None:
        return self.root

    def is_finished_block(self) -> bool:
        r = self.root
        if r is None:
            return False
        return self.finished_vertices >= (self.vertices - {r})


@dataclass(frozen=True)
class Umbrella:
    canopy: int  # block index of B1 (h-dominated)
    handle_edge: int  # block index of B2 (K2)
    attach: int  # the vertex shared by B1 and B2
    handle: int  # the degree-1 endpoint of B2
    finished: bool  # whether the attach vertex is finished in B1


@dataclass(frozen=True)
class FantasticView:
    graph: Graph
    h: int
    k: int
    blocks: tuple[BlockInfo, ...]
    umbrellas: tuple[Umbrella, ...]
    stems: dict[int, int]  # vertex -> block index of its stem (h-component only)
    H: frozenset[int]
    F: frozenset[int]
    I: frozenset[int]

    def block_of_edge(self, u: int, v: int) -> BlockInfo:
        for info in self.blocks:
            if u in info.vertices and v in info.vertices:
                return info
        raise ValueError(f"edge ({u},{v}) not inside any block")

    def blocks_containing(self, v: int) -> list[BlockInfo]:
        return [info for info in self.blocks if v in info.vertices]

    def is_finished_in_stem(self, v: int) -> bool:
        idx = self.stems.get(v)
        if idx is None:
            return False
        return v in self.blocks[idx].finished_vertices


@dataclass(frozen=True)
class Violation:
    prop: str  # P1..P5 | partition | root | invariant id | lemma name
    location: tuple
    message: str

    def __str__(self) -> str:
        return f"[{self.prop}] at {self.location}: {self.message}"


def _dominators(g: Graph, vertices: frozenset[int]) -> list[int]:
    out = []
    for x in vertices:
        nbrs = set(g.adjacency[x])
        if all(y in nbrs for y in vertices if y != x):
            out.append(x)
    return out


def _block_root(g: Graph, vertices: frozenset[int], dist: dict[int, int]) -> int | None:
    doms = _dominators(g, vertices)
    if not doms:
        return None
    for x in doms:
        dx = dist.get(x, INF)
        if all(dist.get(u, INF) > dx for u in vertices if u != x):
            return x
    return None


def _finished_vertices(
    g: Graph, vertices: frozenset[int], root: int, k: int
) -> frozenset[int]:
    need = k - 3
    out = set()
    for v in vertices:
        if v == root:
            continue
        if exists_avoiding_path(g, vertices, root, v, need):
            out.add(v)
    return frozenset(out)


def analyze(g: Graph, h: int, k: int) -> FantasticView:
    """Full structural annotation of g relative to anchor h."""
    if not (0 <= h < g.n):
        raise ValueError(f"anchor {h} out of range for n={g.n}")
    if k < 5:
        raise ValueError(f"density parameter must be >= 5, got {k}")
    decomp = blocks(g)
    dist = distances_from(g, h)
    adj_h = set(g.adjacency[h])

    infos: list[BlockInfo] = []
    for i, b in enumerate(decomp.blocks):
        root = _block_root(g, b, dist)
        nearly = False
        if h in b and root is None:
            missing = [x for x in b if x != h and x not in adj_h]
            nearly = len(missing) == 1
        eff_root = root if root is not None else (h if nearly else None)
        finished = (
            _finished_vertices(g, b, eff_root, k) if eff_root is not None else frozenset()
        )
        infos.append(
            BlockInfo(
                index=i,
                vertices=b,
                root=root,
                nearly_h_dominated=nearly,
                finished_vertices=finished,
            )
        )

    umbrellas: list[Umbrella] = []
    for b1 in infos:
        if h not in b1.vertices:
            continue
        if not all(x in adj_h for x in b1.vertices if x != h):
            continue  # condition 1: h dominates B1
        for b2 in infos:
            if b2.index == b1.index or not b2.is_k2:
                continue  # condition 2
            shared = b1.vertices & b2.vertices
            if len(shared) != 1:
                continue
            attach = next(iter(shared))
            if attach == h:
                continue  # condition 3
            handle = next(iter(b2.vertices - {attach}))
            if g.degree(handle) != 1:
                continue  # condition 5
            ok = True
            for other in infos:
                if other.index in (b1.index, b2.index):
                    continue
                inter = other.vertices & b1.vertices
                if inter and inter != {h}:
                    ok = False  # condition 4
                    break
            if not ok:
                continue
            umbrellas.append(
                Umbrella(
                    canopy=b1.index,
                    handle_edge=b2.index,
                    attach=attach,
                    handle=handle,
                    finished=attach in b1.finished_vertices,
                )
            )

    # tag umbrella roles on the block infos
    role: dict[int, tuple[str, int]] = {}
    for uid, um in enumerate(umbrellas):
        role[um.canopy] = ("canopy", uid)
        role[um.handle_edge] = ("handle-edge", uid)
    infos = [
        BlockInfo(
            index=info.index,
            vertices=info.vertices,
            root=info.root,
            nearly_h_dominated=info.nearly_h_dominated,
            finished_vertices=info.finished_vertices,
            umbrella_role=role.get(info.index, (None, None))[0],
            umbrella_id=role.get(info.index, (None, None))[1],
        )
        for info in infos
    ]

    h_block_ids = {info.index for info in infos if info.nearly_h_dominated}
    for um in umbrellas:
        if not um.finished:
            h_block_ids.add(um.canopy)
            h_block_ids.add(um.handle_edge)
    if h_block_ids:
        H = frozenset(
            x for i in h_block_ids for x in infos[i].vertices
        )
    else:
        H = frozenset({h})
    F = frozenset({h}) | frozenset(
        x
        for info in infos
        if info.index not in h_block_ids
        for x in info.vertices
    )
    I = frozenset(g.isolated_vertices())

    # stems: first block on the v--h block geodesic, via BFS over the
    # block-cut structure from h
    stems: dict[int, int] = {}
    depth: dict[int, int] = {}
    h_blocks = [info.index for info in infos if h in info.vertices]
    frontier = list(h_blocks)
    for i in frontier:
        depth[i] = 0
    seen_vertices = {h}
    while frontier:
        nxt = []
        for i in frontier:
            for x in infos[i].vertices:
                if x in seen_vertices:
                    continue
                seen_vertices.add(x)
                stems[x] = i
                for j_info in infos:
                    j = j_info.index
                    if j not in depth and x in j_info.vertices:
                        depth[j] = depth[i] + 1
                        nxt.append(j)
        frontier = nxt

    return FantasticView(
        graph=g,
        h=h,
        k=k,
        blocks=tuple(infos),
        umbrellas=tuple(umbrellas),
        stems=stems,
        H=H,
        F=F,
        I=I,
    )


def is_k_fantastic(view: FantasticView) -> list[Violation]:
    """Check Properties 1-5 on the induced subgraph F; empty list = fantastic."""
    g, h, k = view.graph, view.h, view.k
    F = view.F
    gF = g.induced(F)
    violations: list[Violation] = []

    # P1: F connected
    comp = gF.component_ids
    f_comps = {comp[v] for v in F if gF.adjacency[v]} | {comp[h]}
    lonely = [v for v in F if not gF.adjacency[v] and v != h]
    if len(f_comps) > 1 or lonely:
        violations.append(
            Violation("P1", tuple(sorted(F)), "F is not connected")
        )
        return violations  # remaining properties presume a connected F

    distF = distances_from(gF, h)
    decomp = blocks(gF)
    roots: dict[int, int | None] = {}
    finishedF: dict[int, frozenset[int]] = {}
    for i, b in enumerate(decomp.blocks):
        r = _block_root(gF, b, distF)
        roots[i] = r
        finishedF[i] = (
            _finished_vertices(gF, b, r, k) if r is not None else frozenset()
        )
        if r is None:
            violations.append(
                Violation("P2", tuple(sorted(b)), "block in F has no root")
            )
    if any(v.prop == "P2" for v in violations):
        return violations

    # stems within F: the block containing v nearest h
    stemF: dict[int, int] = {}
    depth: dict[int, int] = {}
    frontier = [i for i, b in enumerate(decomp.blocks) if h in b]
    for i in frontier:
        depth[i] = 0
    seen = {h}
    while frontier:
        nxt = []
        for i in frontier:
            for x in decomp.blocks[i]:
                if x in seen:
                    continue
                seen.add(x)
                stemF[x] = i
                for j, bj in enumerate(decomp.blocks):
                    if j not in depth and x in bj:
                        depth[j] = depth[i] + 1
                        nxt.append(j)
        frontier = nxt

    # P3: every non-h root is finished in its stem
    root_of: dict[int, list[int]] = {}
    for i, r in roots.items():
        if r is not None:
            root_of.setdefault(r, []).append(i)
    for v, rooted_ids in root_of.items():
        if v == h:
            continue
        stem = stemF.get(v)
        if stem is None:
            continue
        if v not in finishedF[stem]:
            violations.append(
                Violation(
                    "P3",
                    (v,),
                    f"root {v} is unfinished in its stem {tuple(sorted(decomp.blocks[stem]))}",
                )
            )

    # P4: each non-h vertex roots at most one unfinished block
    for v, rooted_ids in root_of.items():
        if v == h:
            continue
        unfinished = [
            i
            for i in rooted_ids
            if not finishedF[i] >= (decomp.blocks[i] - {roots[i]})
        ]
        if len(unfinished) > 1:
            violations.append(
                Violation(
                    "P4",
                    (v,),
                    f"vertex {v} roots {len(unfinished)} unfinished blocks",
                )
            )

    # P5: h adjacent to at most one degree-1 vertex of F
    leaves = [y for y in gF.adjacency[h] if gF.degree(y) == 1]
    if len(leaves) > 1:
        violations.append(
            Violation("P5", tuple(leaves), f"h has {len(leaves)} degree-1 neighbors in F")
        )
    return violations


def partition_violations(view: FantasticView) -> list[Violation]:
    """V = H ∪ F ∪ I, and every graph edge is covered by exactly one block."""
    g = view.graph
    out = []
    union = view.H | view.F | view.I
    if union != frozenset(range(g.n)):
        out.append(
            Violation(
                "partition",
                tuple(sorted(frozenset(range(g.n)) - union)),
                "vertices outside H ∪ F ∪ I",
            )
        )
    covered = []
    for info in view.blocks:
        covered.extend(g.induced(info.vertices).sorted_edges())
    if sorted(covered) != g.sorted_edges():
        out.append(Violation("partition", (), "block edges do not partition E"))
    return out


def check_triangle_invariants(g: Graph) -> list[Violation]:
    """Invariants of the triangle-block strategy:

    (i) every non-K2 block contains a triangle;
    (ii) at most one non-trivial path of K2 blocks, of at most three edges.
    """
    decomp = blocks(g)
    violations: list[Violation] = []
    bridge_edges = []
    for b in decomp.blocks:
        if len(b) == 2:
            bridge_edges.append(tuple(sorted(b)))
            continue
        sub = g.induced(b)
        has_triangle = False
        for x, y in sub.edges:
            if set(sub.adjacency[x]) & set(sub.adjacency[y]):
                has_triangle = True
                break
        if not has_triangle:
            violations.append(
                Violation("i", tuple(sorted(b)), "non-K2 block without a triangle")
            )

    # components of the bridge subgraph
    badj: dict[int, list[int]] = {}
    for u, v in bridge_edges:
        badj.setdefault(u, []).append(v)
        badj.setdefault(v, []).append(u)
    seen: set[int] = set()
    nontrivial = []
    for start in sorted(badj):
        if start in seen:
            continue
        comp_vs = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in badj[x]:
                if y not in comp_vs:
                    comp_vs.add(y)
                    stack.append(y)
        seen |= comp_vs
        comp_edges = [e for e in bridge_edges if e[0] in comp_vs]
        if len(comp_edges) >= 2:
            nontrivial.append((comp_vs, comp_edges))

    if len(nontrivial) > 1:
        violations.append(
            Violation(
                "ii",
                tuple(sorted(v for comp, _ in nontrivial for v in comp)),
                f"{len(nontrivial)} non-trivial paths of K2 blocks",
            )
        )
    for comp_vs, comp_edges in nontrivial:
        if any(len(badj[x]) > 2 for x in comp_vs):
            violations.append(
                Violation(
                    "ii", tuple(sorted(comp_vs)), "branching chain of K2 blocks"
                )
            )
        elif len(comp_edges) > 3:
            violations.append(
                Violation(
                    "ii",
                    tuple(sorted(comp_vs)),
                    f"path of {len(comp_edges)} K2 blocks (max 3)",
                )
            )
    return violations


@dataclass
class LemmaCheck:
    name: str
    samples: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class LemmaAuditReport:
    checks: list[LemmaCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            mark = "pass" if c.passed else f"FAIL ({len(c.failures)})"
            lines.append(f"{c.name}: {c.samples} samples, {mark}")
        return "\n".join(lines)


def audit_path_lemmas(
    view: FantasticView, g: Graph, samples: int = 20, seed: int = 0
) -> LemmaAuditReport:
    """Spot-check the path-length lemmas on a (presumed fantastic) view."""
    rng = random.Random(seed)
    h, k = view.h, view.k
    checks: list[LemmaCheck] = []

    # circumference of a fantastic graph is at most k-1
    circ = circumference(g)
    checks.append(
        LemmaCheck(
            "circumference <= k-1",
            1,
            [] if circ <= k - 1 else [f"circumference {circ} > {k - 1}"],
        )
    )

    # no rooted/nearly block has an r_B-avoiding path of length k-2
    fails: list[str] = []
    count = 0
    for info in view.blocks:
        r = info.root if info.root is not None else (h if info.nearly_h_dominated else None)
        if r is None:
            continue
        for v in info.vertices:
            if v == r:
                continue
            count += 1
            if exists_avoiding_path(g, info.vertices, r, v, k - 2):
                fails.append(
                    f"avoiding path of length {k - 2} from {v} in block {tuple(sorted(info.vertices))}"
                )
    checks.append(LemmaCheck("short-avoiding-path cap", count, fails))

    # finished v in rooted B, u in B: u--v paths of every length in [d(u,v), k-2]
    triples = []
    for info in view.blocks:
        if info.root is None:
            continue
        sub = g.induced(info.vertices)
        for v in info.finished_vertices:
            dv = distances_from(sub, v)
            for u in info.vertices:
                if u != v:
                    triples.append((info, u, v, dv[u]))
    rng.shuffle(triples)
    fails = []
    taken = triples[:samples]
    for info, u, v, duv in taken:
        sub = g.induced(info.vertices)
        for ell in range(duv, k - 1):
            if not has_path_of_length(sub, u, v, ell):
                fails.append(
                    f"no {u}--{v} path of length {ell} in block {tuple(sorted(info.vertices))}"
                )
    checks.append(LemmaCheck("root path-length range", len(taken), fails))

    # u in F-h at block distance s >= 2 from h: u--h paths of all lengths
    # in [s, 1 + (k-2)(s-1)]
    candidates = []
    for u in view.F:
        if u == h or not g.adjacency[u]:
            continue
        if not g.same_component(u, h):
            continue
        s = len(block_geodesic(g, u, h))
        if s >= 2:
            candidates.append((u, s))
    rng.shuffle(candidates)
    fails = []
    taken2 = candidates[:samples]
    for u, s in taken2:
        for ell in range(s, 1 + (k - 2) * (s - 1) + 1):
            if not has_path_of_length(g, u, h, ell):
                fails.append(f"no {u}--{h} path of length {ell} (s={s})")
    checks.append(LemmaCheck("F-to-h path-length range", len(taken2), fails))

    # u,v in F at block distance exactly 2: a u--v path of length k-1 exists
    # unless h roots both geodesic blocks and both endpoints are unfinished
    pairs = []
    f_list = sorted(v for v in view.F if g.adjacency[v])
    for _ in range(samples * 4):
        if len(f_list) < 2:
            break
        u, v = rng.sample(f_list, 2)
        if not g.same_component(u, v):
            continue
        geo = block_geodesic(g, u, v)
        if len(geo) == 2:
            pairs.append((u, v, geo))
        if len(pairs) >= samples:
            break
    fails = []
    for u, v, geo in pairs:
        b1 = next(i for i in view.blocks if i.vertices == geo[0])
        b2 = next(i for i in view.blocks if i.vertices == geo[1])
        exempt = (
            b1.root == h
            and b2.root == h
            and u not in b1.finished_vertices | b2.finished_vertices
            and v not in b1.finished_vertices | b2.finished_vertices
        )
        if exempt:
            continue
        if not has_path_of_length(g, u, v, k - 1):
            fails.append(f"no {u}--{v} path of length {k - 1} at block distance 2")
    checks.append(LemmaCheck("block-distance-2 long path", len(pairs), fails))

    return LemmaAuditReport(checks)


def structure_payload(view: FantasticView) -> dict:
    """Role/tag payload for the service and UI overlays."""
    g = view.graph
    roots = {info.root for info in view.blocks if info.root is not None}
    handles = {um.handle for um in view.umbrellas}
    finished = {
        v for v in range(g.n) if v != view.h and view.is_finished_in_stem(v)
    }
    vertices = []
    for v in range(g.n):
        roles = []
        if v == view.h:
            roles.append("h")
        if v in roots:
            roles.append("root")
        if v in finished:
            roles.append("finished")
        if v in handles:
            roles.append("handle")
        if v in view.H:
            roles.append("H")
        if v in view.F:
            roles.append("F")
        if v in view.I:
            roles.append("I")
        vertices.append({"id": v, "roles": roles})
    blocks_out = []
    for info in view.blocks:
        tags = []
        if info.is_k2:
            tags.append("k2")
        if info.root is not None:
            tags.append("rooted")
        if info.nearly_h_dominated:
            tags.append("nearly-dominated")
        if info.umbrella_role == "canopy":
            tags.append("umbrella-canopy")
        if info.umbrella_role == "handle-edge":
            tags.append("umbrella-handle-edge")
        blocks_out.append(
            {
                "vertices": sorted(info.vertices),
                "root": info.root,
                "tags": tags,
            }
        )
    return {"h": view.h, "k": view.k, "vertices": vertices, "blocks": blocks_out}
