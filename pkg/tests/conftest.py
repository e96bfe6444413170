"""Shared fixtures: the worked star example, a one-frustrated-triangle, and
random connected signed graph sampling used across the property tests."""
import numpy as np
import pytest

from signedcode import build_signed_graph

# star on nodes 1..4 with center 5; spokes first, then the outer 4-cycle,
# then the (1,3) chord; this input order is kept (canonical_order=False)
STAR_EDGES = [
    (1, 5, 1), (2, 5, 1), (3, 5, 1), (4, 5, 1),
    (1, 2, 1), (2, 3, 1), (3, 4, 1), (1, 4, 1), (1, 3, 1),
]

TRIANGLE_EDGES = [(1, 2, 1), (2, 3, 1), (1, 3, -1)]


@pytest.fixture
def star():
    return build_signed_graph(STAR_EDGES, canonical_order=False)


@pytest.fixture
def triangle():
    # canonical edge order: (1,2) -> 0, (1,3) -> 1, (2,3) -> 2
    return build_signed_graph(TRIANGLE_EDGES)


def random_connected_graph(rng, n, extra_edges, all_positive=False):
    """Random tree plus extra chords; signs uniform unless all_positive."""
    edges = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        edges.add((u, v))
    cap = n * (n - 1) // 2
    while len(edges) < min(cap, n - 1 + extra_edges):
        u, v = sorted(map(int, rng.choice(n, size=2, replace=False)))
        edges.add((u, v))
    sign = (lambda: 1) if all_positive else (lambda: int(rng.choice((-1, 1))))
    return build_signed_graph([(u, v, sign()) for (u, v) in sorted(edges)])


def random_weights(rng, m):
    from signedcode import BitVector

    return BitVector.from_numpy(rng.integers(0, 2, m).astype(np.uint8))
