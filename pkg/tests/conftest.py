import numpy as np
import pytest

from slbsearch import (
    Edge,
    EstimatedDigraph,
    EstimatorSpec,
    Problem,
    NUMBA_AVAILABLE,
)

# Reference instance used across the suite: five vertices, start 0, goals
# {3, 4}. Edge indices by declaration order; labels name tail/head.
E01, E02, E14, E21, E23, E24 = range(6)

# layer time costs for the reference instance (cheap probe, pricier refine)
T1, T2 = 1.0, 10.0


def edge(tail, head, specs, true_cost=None):
    return Edge(tail, head, tuple(EstimatorSpec(*s) for s in specs), true_cost)


def make_reference_graph():
    edges = [
        edge(0, 1, [(4, 4, T1)], 4),
        edge(0, 2, [(2, 6, T1), (3, 5, T2)], 4),
        edge(1, 4, [(1, 10, T1), (4, 6, T2)], 5),
        edge(2, 1, [(2, 3, T1), (3, 3, T2)], 3),
        edge(2, 3, [(5, 9, T1), (7, 8, T2)], 7),
        edge(2, 4, [(4, 6, T1)], 6),
    ]
    return EstimatedDigraph(5, edges)


def make_reference_problem():
    return Problem(make_reference_graph(), 0, frozenset({3, 4}))


@pytest.fixture
def ref():
    return make_reference_problem()


BACKENDS = ["numpy", "numba"] if NUMBA_AVAILABLE else ["numpy"]


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def random_problem(rng: np.random.Generator, max_n=8, edge_prob=0.3, max_layers=3):
    """Arbitrary-topology estimated problem: cycles, self-loops and parallel
    edges allowed, integer-valued nested bounds, true cost inside every
    interval."""
    n = int(rng.integers(2, max_n + 1))
    edges = []
    for tail in range(n):
        for head in range(n):
            if rng.random() >= edge_prob:
                continue
            k = int(rng.integers(1, max_layers + 1))
            c = int(rng.integers(0, 21))
            lowers = sorted(int(rng.integers(0, c + 1)) for _ in range(k))
            uppers = sorted(
                (int(rng.integers(c, c + 15)) for _ in range(k)), reverse=True
            )
            specs = tuple(
                EstimatorSpec(float(lo), float(up), float(10**i))
                for i, (lo, up) in enumerate(zip(lowers, uppers))
            )
            edges.append(Edge(tail, head, specs, float(c)))
    graph = EstimatedDigraph(n, edges)
    n_goals = int(rng.integers(1, 3))
    goals = frozenset(int(v) for v in rng.choice(n, size=n_goals, replace=False))
    return Problem(graph, 0, goals)
