import random

import pytest

from satgame.graph import Graph


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    pairs = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, pairs)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
