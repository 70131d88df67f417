"""Reproducible weighted-digraph instance generators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["WeightedDigraph", "gen_random_graph", "gen_grid_graph"]


@dataclass(frozen=True)
class WeightedDigraph:
    """Plain digraph with positive integer edge costs, pre-estimation."""

    vertex_count: int
    start: int
    goals: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]


def _check_cost_range(cost_range) -> tuple[int, int]:
    lo, hi = int(cost_range[0]), int(cost_range[1])
    if not 1 <= lo <= hi:
        raise ValueError(f"cost range [{lo}, {hi}] must satisfy 1 <= lo <= hi")
    return lo, hi


def gen_random_graph(n: int, edge_prob: float, cost_range, rng_seed: int) -> WeightedDigraph:
    """Random layered-order digraph: each forward pair (i, j), i < j, gets an
    edge with probability edge_prob and a uniform integer cost. Start is 0,
    the single goal is n - 1. Fully deterministic in rng_seed.
    """
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if not 0.0 < edge_prob <= 1.0:
        raise ValueError("edge_prob must be in (0, 1]")
    lo, hi = _check_cost_range(cost_range)
    rng = np.random.default_rng(rng_seed)
    keep = rng.random((n, n)) < edge_prob
    costs = rng.integers(lo, hi + 1, size=(n, n))
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if keep[i, j]:
                edges.append((i, j, int(costs[i, j])))
    return WeightedDigraph(n, 0, (n - 1,), tuple(edges))


def gen_grid_graph(rows: int, cols: int, cost_range, rng_seed: int) -> WeightedDigraph:
    """Directed grid: vertex r * cols + c, edges to the right and downward
    neighbors. Start is the top-left corner, goal the bottom-right. Fully
    deterministic in rng_seed.
    """
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise ValueError("grid must contain at least 2 cells")
    lo, hi = _check_cost_range(cost_range)
    rng = np.random.default_rng(rng_seed)
    costs = rng.integers(lo, hi + 1, size=(rows, cols, 2))
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, int(costs[r, c, 0])))
            if r + 1 < rows:
                edges.append((v, v + cols, int(costs[r, c, 1])))
    n = rows * cols
    return WeightedDigraph(n, 0, (n - 1,), tuple(edges))
