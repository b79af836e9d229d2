import random

import pytest

from satgame.engine import (
    GameState,
    LegalityCache,
    Move,
    apply_move,
    legal_moves,
    play_match,
)
from satgame.families import parse_family
from satgame.graph import Graph, circumference
from satgame.strategies import (
    FantasticStrategy,
    GreedyProlongStrategy,
    ProlongerStrategy,
    RandomStrategy,
    StrategyFamilyError,
    TriangleStrategy,
    parse_strategy,
)
from satgame.structure import analyze, check_triangle_invariants, is_k_fantastic


def make_state(n, family, edges):
    g = Graph.empty(n)
    history = []
    mover = "max"
    for u, v in edges:
        g = g.add_edge(u, v)
        history.append(Move(min(u, v), max(u, v), mover))
        mover = "mini" if mover == "max" else "max"
    return GameState(
        graph=g,
        family=parse_family(family),
        first_mover="max",
        history=tuple(history),
    )


def pick(strategy, state):
    strategy.begin_match(state, LegalityCache())
    return strategy.choose(state)


class TestParseStrategy:
    def test_round_trips(self):
        for spec in ["fantastic:k=5", "triangle:k=7", "prolonger:k=5,s=3",
                     "random:seed=7", "greedy"]:
            assert parse_strategy(spec).spec == spec

    def test_rejects_unknown(self):
        with pytest.raises(ValueError):
            parse_strategy("psychic")


class TestFamilyValidation:
    def test_fantastic_requires_dense_family(self):
        with pytest.raises(StrategyFamilyError):
            FantasticStrategy(k=5).validate_family(parse_family("odd"))
        FantasticStrategy(k=5).validate_family(parse_family("geom:3,4"))

    def test_triangle_rejects_c3(self):
        with pytest.raises(StrategyFamilyError):
            TriangleStrategy(k=7).validate_family(parse_family("odd"))
        TriangleStrategy(k=7).validate_family(parse_family("odd-ge:7"))

    def test_prolonger_window(self):
        with pytest.raises(StrategyFamilyError):
            ProlongerStrategy(k=5, s=3).validate_family(parse_family("all-ge:10"))
        ProlongerStrategy(k=5, s=3).validate_family(parse_family("all-ge:26"))


class TestFantasticCases:
    def test_opens_with_first_edge(self):
        s = GameState.new(6, "odd-ge:5")
        assert pick(FantasticStrategy(k=5), s) == (0, 1)

    def test_case_1_isolated_pair_goes_to_h(self):
        s = make_state(6, "odd-ge:5", [(0, 1), (2, 3)])
        assert pick(FantasticStrategy(k=5), s) == (0, 2)

    def test_case_2b_pairs_the_two_leaves(self):
        s = make_state(6, "odd-ge:5", [(0, 1), (0, 2)])
        assert pick(FantasticStrategy(k=5), s) == (1, 2)

    def test_case_3b_closes_umbrella_at_h(self):
        # n=4 leaves no isolated vertices, so the retained-move path must
        # close the freshly made umbrella through its handle
        s = make_state(4, "odd-ge:5", [(0, 1), (0, 2), (1, 2), (1, 3)])
        assert pick(FantasticStrategy(k=5), s) == (0, 3)

    def test_case_0_completes_nearly_dominated_block(self):
        s = make_state(5, "all-ge:6", [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert pick(FantasticStrategy(k=6), s) == (0, 2)

    def test_case_4a_completes_nearly_dominated_block(self):
        s = make_state(
            6, "all-ge:6", [(0, 1), (1, 2), (2, 3), (0, 3), (1, 4)]
        )
        assert pick(FantasticStrategy(k=6), s) == (0, 2)

    def test_case_4b_closes_umbrella_before_growing(self):
        s = make_state(6, "all-ge:6", [(0, 1), (1, 2), (1, 4)])
        move = pick(FantasticStrategy(k=6), s)
        assert move == (0, 2)
        follow = apply_move(s, *move, s.next_mover)
        assert not is_k_fantastic(analyze(follow.graph, 0, 6))

    def test_case_5b_umbrella_meets_nearly_dominated(self):
        s = make_state(
            8,
            "all-ge:6",
            [(0, 1), (1, 2), (0, 3), (3, 4), (4, 5), (0, 5), (1, 3)],
        )
        assert pick(FantasticStrategy(k=6), s) == (0, 4)

    def test_case_5c_bridges_two_nearly_dominated_blocks(self):
        s = make_state(
            8,
            "all-ge:6",
            [(0, 1), (1, 2), (2, 3), (0, 3),
             (0, 4), (4, 5), (5, 6), (0, 6), (2, 5)],
        )
        move = pick(FantasticStrategy(k=6), s)
        assert move == (0, 2)
        follow = apply_move(s, *move, s.next_mover)
        assert not is_k_fantastic(analyze(follow.graph, 0, 6))

    def test_edge_bound(self):
        assert FantasticStrategy(k=5).edge_bound(60) == 119


class TestTriangleCases:
    def test_empty_graph(self):
        s = GameState.new(5, "odd-ge:7")
        assert pick(TriangleStrategy(k=7), s) == (0, 1)

    def test_free_move_chords_the_bridge_path(self):
        s = make_state(6, "odd-ge:7", [(0, 1), (1, 2), (2, 3)])
        assert pick(TriangleStrategy(k=7), s) == (0, 2)

    def test_c4_block_gets_a_diagonal(self):
        s = make_state(6, "odd-ge:7", [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert pick(TriangleStrategy(k=7), s) == (0, 2)

    def test_second_bridge_chain_is_triangulated(self):
        # one chain 0-1-2 exists; the opponent starts another at 4-5-6
        s = make_state(
            8, "odd-ge:7", [(0, 1), (1, 2), (4, 5), (0, 2), (5, 6)]
        )
        move = pick(TriangleStrategy(k=7), s)
        assert move == (4, 6)
        follow = apply_move(s, *move, s.next_mover)
        assert not check_triangle_invariants(follow.graph)

    def test_edge_bound(self):
        assert TriangleStrategy(k=7).edge_bound(41) == 400


class TestProlongerCases:
    def test_empty_graph(self):
        s = GameState.new(10, "all-ge:26")
        assert pick(ProlongerStrategy(k=5, s=3), s) == (0, 1)

    def test_growth_extends_longest_path_with_isolated_vertex(self):
        s = make_state(
            10, "all-ge:26",
            [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (7, 8)],
        )
        assert pick(ProlongerStrategy(k=5, s=3), s) == (4, 9)

    def test_strike_closes_k_prime_cycle(self):
        strat = ProlongerStrategy(k=5, s=3)
        assert strat.k_prime == 6
        s = make_state(
            10, "all-ge:26", [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]
        )
        assert pick(strat, s) == (0, 5)
        follow = apply_move(s, 0, 5, s.next_mover)
        assert circumference(follow.graph) == 6


class TestRandomStrategy:
    def test_seed_deterministic(self):
        s = GameState.new(5, "odd")
        first = pick(RandomStrategy(seed=11), s)
        second = pick(RandomStrategy(seed=11), s)
        assert first == second
        assert first in legal_moves(s)

    def test_passes_when_saturated(self):
        g = Graph.empty(4)
        for u, v in [(0, 1), (1, 2), (2, 3)]:
            g = g.add_edge(u, v)
        s = GameState(graph=g, family=parse_family("all-ge:3"))
        assert pick(RandomStrategy(seed=0), s) is None


class TestGreedyProlong:
    def test_matches_brute_force_argmax(self):
        rng = random.Random(99)
        for spec in ("odd", "all-ge:5", "list:4,6"):
            for _ in range(10):
                s = GameState.new(rng.randint(4, 7), spec)
                for _ in range(rng.randint(0, 8)):
                    moves = legal_moves(s)
                    if not moves:
                        break
                    s = apply_move(s, *rng.choice(moves), s.next_mover)
                got = pick(GreedyProlongStrategy(), s)
                best, best_val = None, -1
                for u, v in legal_moves(s):
                    val = len(legal_moves(apply_move(s, u, v, s.next_mover)))
                    if val > best_val:
                        best, best_val = (u, v), val
                assert got == best, (spec, s.graph.sorted_edges())

    def test_forest_building_prefers_fresh_vertices(self):
        s = make_state(6, "all-ge:3", [(0, 1)])
        assert pick(GreedyProlongStrategy(), s) == (2, 3)


class TestSoundnessSmall:
    @pytest.mark.parametrize("family,k", [("odd-ge:5", 5), ("all-ge:6", 6)])
    @pytest.mark.parametrize("seat", ["max", "mini"])
    def test_fantastic_self_audits_pass(self, family, k, seat):
        fant = parse_strategy(f"fantastic:k={k}")
        rnd = parse_strategy("random:seed=5")
        first, second = (fant, rnd) if seat == "max" else (rnd, fant)
        rec = play_match(14, family, "max", first, second)
        assert all(a["pass"] for a in rec.audits)
        assert rec.final["bound_ok"]

    @pytest.mark.parametrize("seat", ["max", "mini"])
    def test_triangle_self_audits_pass(self, seat):
        tri = parse_strategy("triangle:k=7")
        rnd = parse_strategy("random:seed=5")
        first, second = (tri, rnd) if seat == "max" else (rnd, tri)
        rec = play_match(14, "odd-ge:7", "max", first, second)
        assert all(a["pass"] for a in rec.audits)
        assert rec.final["circumference"] < 21

    def test_prolonger_forces_long_cycle(self):
        pro = parse_strategy("prolonger:k=5,s=3")
        rnd = parse_strategy("random:seed=2")
        rec = play_match(
            30, "all-ge:26", "max", pro, rnd,
            stop_when=lambda s: circumference(s.graph) >= 5,
        )
        assert rec.final["circumference"] >= 5
