"""End-to-end acceptance suite.

Exact small-n values, the sat <= sat_g <= ex chain, move-by-move
soundness of the constructive strategies against adversary grids,
prolonger forcing, extremal bounds, lemma property sweeps, and density
certification.
"""

import random

import pytest

from satgame.engine import MatchRecord, play_match
from satgame.families import certify_k_dense, erdos_gallai_bound, parse_family
from satgame.graph import Graph, circumference, longest_path, path_length_set
from satgame.solver import ex_exact, sat_g_exact, verify_chain
from satgame.strategies import StrategyFamilyError, parse_strategy
from satgame.structure import analyze, audit_path_lemmas, is_k_fantastic

RANDOM_SEEDS = range(10)


def adversary_specs(family_spec: str, k: int) -> list[str]:
    """Random seeds and greedy always; prolonger only when the family
    satisfies its window hypothesis."""
    specs = [f"random:seed={s}" for s in RANDOM_SEEDS] + ["greedy"]
    prolonger = parse_strategy(f"prolonger:k={k},s=3")
    try:
        prolonger.validate_family(parse_family(family_spec))
    except StrategyFamilyError:
        return specs
    return specs + [f"prolonger:k={k},s=3"]


def seated_matches(n, family_spec, hero_spec, adversary_spec):
    """One match per seat for the strategy under test."""
    for hero_first in (True, False):
        hero = parse_strategy(hero_spec)
        adversary = parse_strategy(adversary_spec)
        first, second = (hero, adversary) if hero_first else (adversary, hero)
        hero_seat = "max" if hero_first else "mini"
        record = play_match(n, family_spec, "max", first, second)
        yield hero_seat, record


def graph_after_last_move_of(record: MatchRecord, seat: str) -> Graph:
    last = max(i for i, m in enumerate(record.moves) if m["mover"] == seat)
    g = Graph.empty(record.n)
    for m in record.moves[: last + 1]:
        g = g.add_edge(m["u"], m["v"])
    return g


class TestCriterion1OddGameValues:
    @pytest.mark.parametrize("n,want", [(3, 2), (4, 4), (5, 6), (6, 9), (7, 12)])
    def test_sat_g_odd_is_n_squared_over_four(self, n, want):
        result = sat_g_exact(n, "odd", first_mover="max")
        assert result.value == want == n * n // 4


class TestCriterion2Chain:
    @pytest.mark.parametrize("family", ["odd", "all-ge:4", "all-ge:5", "list:4,5"])
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_sat_le_satg_le_ex_both_movers(self, family, n):
        report = verify_chain(n, family)
        assert report["ok"]
        for mover in ("max", "mini"):
            assert report["sat"] <= report["sat_g"][mover] <= report["ex"]


class TestCriterion3FantasticSoundness:
    @pytest.mark.parametrize(
        "family,k", [("odd-ge:5", 5), ("geom:3,4", 5), ("all-ge:6", 6)]
    )
    @pytest.mark.parametrize("n", [20, 40, 60])
    def test_grid(self, family, k, n):
        hero = f"fantastic:k={k}"
        edge_cap = (k - 1) * (n - 1) // 2 + 1
        for adversary in adversary_specs(family, k):
            for seat, record in seated_matches(n, family, hero, adversary):
                bad = [a for a in record.audits if not a["pass"]]
                assert not bad, (family, n, adversary, seat, bad[:3])
                assert record.final["edges"] <= edge_cap, (family, n, adversary, seat)
                g = graph_after_last_move_of(record, seat)
                assert circumference(g) <= k - 1, (family, n, adversary, seat)


class TestCriterion4TriangleSoundness:
    @pytest.mark.parametrize("n", [20, 40])
    def test_grid(self, n):
        k = 7
        for adversary in adversary_specs("odd-ge:7", k):
            for seat, record in seated_matches(n, "odd-ge:7", "triangle:k=7", adversary):
                bad = [a for a in record.audits if not a["pass"]]
                assert not bad, (n, adversary, seat, bad[:3])
                assert record.final["edges"] <= 10 * (n - 1)
                assert record.final["circumference"] < 3 * k


class TestCriterion5ProlongerForcing:
    def test_forces_circumference_five(self):
        # circumference is monotone under edge addition, so stopping the
        # match once it reaches 5 certifies the final value would too
        stop = lambda s: circumference(s.graph) >= 5
        adversaries = [f"random:seed={s}" for s in RANDOM_SEEDS] + ["triangle:k=26"]
        for adversary in adversaries:
            record = play_match(
                60, "all-ge:26", "max",
                parse_strategy("prolonger:k=5,s=3"), parse_strategy(adversary),
                stop_when=stop,
            )
            assert record.final["circumference"] >= 5, adversary


class TestCriterion6ErdosGallai:
    @pytest.mark.parametrize("k", [3, 4, 5])
    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_extremal_at_most_bound(self, n, k):
        assert ex_exact(n, f"all-ge:{k}") <= erdos_gallai_bound(n, k)

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_forests_attain_spanning_trees(self, n):
        assert ex_exact(n, "all-ge:3") == n - 1


class TestCriterion7LemmaSuites:
    def test_path_lemmas_on_self_play_views(self):
        views = []
        for family, k in [("odd-ge:5", 5), ("geom:3,4", 5), ("all-ge:6", 6)]:
            for seed in range(4):
                record = play_match(
                    20, family, "max",
                    parse_strategy(f"fantastic:k={k}"),
                    parse_strategy(f"random:seed={seed}"),
                )
                g = Graph.empty(20)
                for i, m in enumerate(record.moves):
                    g = g.add_edge(m["u"], m["v"])
                    if m["mover"] == "max":
                        views.append(analyze(g, 0, k))
        assert len(views) >= 200
        for view in views:
            assert not is_k_fantastic(view)
            report = audit_path_lemmas(view, view.graph)
            failed = [c for c in report.checks if not c.passed]
            assert not failed, failed[:3]

    def test_longest_detour_cap_on_random_graphs(self):
        # circumference < k bounds any x1-to-x_m' path by m'-1+2(k-2)^2
        rng = random.Random(17)
        samples = 0
        while samples < 500:
            n = rng.randint(4, 10)
            g = Graph.empty(n)
            for u in range(n):
                for v in range(u + 1, n):
                    if rng.random() < rng.choice((0.2, 0.35, 0.5)):
                        g = g.add_edge(u, v)
            if not g.edges:
                continue
            k = max(circumference(g) + 1, 3)
            path = longest_path(g).vertices
            slack = 2 * (k - 2) ** 2
            for idx, x in enumerate(path):
                if idx == 0:
                    continue
                lengths = path_length_set(g, path[0], x)
                assert max(lengths) <= idx + slack, (g.sorted_edges(), k, idx)
            samples += 1


class TestCriterion8DensityCertification:
    def test_geom_family_certified_5_dense(self):
        cert = certify_k_dense(parse_family("geom:3,4"), 5, horizon=200)
        assert cert.dense
        assert len(cert.per_gap) >= 12
        assert all(gap.ok for gap in cert.per_gap)

    def test_triangle_family_rejected_at_condition_2(self):
        cert = certify_k_dense(parse_family("odd"), 5, horizon=200)
        assert not cert.dense
        assert cert.failure.startswith("condition 2")
