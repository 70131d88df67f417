"""Best-first search for the tightest fully-estimated path lower bound.

The target quantity is the minimum, over all start-to-goal paths, of the
path's lower bound after every estimator on every path edge has been
applied. A path attaining that minimum certifies the tightest available
optimistic bound on the true shortest-path cost, and the ratio of its upper
to lower bound caps how suboptimal acting on it can be.

``beauty`` searches like uniform-cost search on accumulated lower bounds
but estimates lazily: a successor edge is only tightened while that could
still change the successor's recorded bound, and estimation stops early
once the tentative bound clears the l_est threshold. Candidates whose bound
exceeds l_prune are discarded. With both thresholds at infinity the result
is exact; with thresholds from a previous pass it does strictly less
estimation work. ``ei_ucs`` is the estimation-indifferent baseline that
fully estimates every edge it touches.

After a goal is popped, ``beauty_ps`` tightens the returned path's own
bound by jumping each path edge to its final estimator, which either
certifies the path as exactly optimal or yields the bracket
(l_under, l_over) a following pass can exploit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import CORRUPT, EXHAUSTED, FOUND, get_backend
from .estimation import EstimationCache, Metrics
from .graph import Path, Problem

__all__ = ["SearchResult", "SearchTree", "beauty", "beauty_ps", "ei_ucs"]


@dataclass(frozen=True)
class SearchTree:
    """Parent pointers produced by a search, enough to rebuild any path."""

    start: int
    parent_vertex: np.ndarray
    parent_edge: np.ndarray

    def trace(self, vertex: int) -> Path:
        """Walk parents back to the start; empty path if vertex is the start."""
        edges = []
        v = vertex
        while self.parent_edge[v] >= 0:
            edges.append(int(self.parent_edge[v]))
            v = int(self.parent_vertex[v])
        if v != self.start:
            raise ValueError(f"vertex {vertex} was not reached from {self.start}")
        edges.reverse()
        return Path(tuple(edges), vertex)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one search pass.

    path is None when no goal is reachable under the thresholds, in which
    case both bounds are inf. opt means the path's fully-estimated bound
    was certified as the tightest reachable one. pops records the
    expansion order as (vertex, key) pairs, goal pop included.
    """

    path: Path | None
    opt: bool
    l_under: float
    l_over: float
    metrics: Metrics
    pops: tuple[tuple[int, float], ...] = ()

    @property
    def found(self) -> bool:
        return self.path is not None


def _run_kernel(problem, cache, l_est, l_prune, eager, backend):
    arr = problem.graph.arrays()
    be = get_backend(backend)
    n = problem.graph.vertex_count
    goal_mask = np.zeros(n, np.bool_)
    goal_mask[list(problem.goals)] = True
    pop_verts = np.empty(n + 1, np.int64)
    pop_keys = np.empty(n + 1)
    parent_vertex = np.empty(n, np.int64)
    parent_edge = np.empty(n, np.int64)
    tw_before = cache._tw[0]
    status, goal_v, npops = be.run_search(
        arr.indptr,
        arr.succ_vertex,
        arr.succ_edge,
        arr.est_offsets,
        arr.est_lower,
        arr.est_upper,
        arr.est_time,
        cache.next_index,
        cache.tightest_lower,
        cache.tightest_upper,
        cache.invoked,
        cache.layer_counts,
        cache._tw,
        cache._counters,
        problem.start,
        goal_mask,
        float(l_est),
        float(l_prune),
        bool(eager),
        pop_verts,
        pop_keys,
        parent_vertex,
        parent_edge,
    )
    if status == CORRUPT:
        raise RuntimeError(
            f"closed vertex {goal_v} improved during search; "
            "edge bounds are inconsistent (negative or non-nested?)"
        )
    cache.sleep_for(cache._tw[0] - tw_before)
    pops = tuple(
        (int(pop_verts[i]), float(pop_keys[i])) for i in range(int(npops))
    )
    return status, int(goal_v), pops, SearchTree(problem.start, parent_vertex, parent_edge)


def beauty_ps(
    path: Path, l_path: float, cache: EstimationCache
) -> tuple[bool, float, float]:
    """Post-search tightening of a found path's own bound.

    l_path is the path's bound as popped (every path edge has at least one
    applied estimator). Each edge that still has unapplied estimators is
    jumped to its final one and the path bound updated incrementally.
    Returns (opt, l_under, l_over): l_under is the bound as popped, l_over
    the fully-estimated bound, and opt says they agree, i.e. tightening
    changed nothing and the path is certified.
    """
    l_under = l_path
    l_cur = l_path
    for eid in path.edges:
        if cache.applied_count(eid) < 1:
            raise ValueError(f"path edge {eid} has no applied estimator")
        if cache.has_remaining(eid):
            prev = cache.state(eid).tightest_lower
            new = cache.apply_final(eid)
            l_cur += new - prev
    return (not l_cur > l_under), l_under, l_cur


def _search(problem, cache, l_est, l_prune, eager, backend):
    if cache is None:
        cache = EstimationCache(problem.graph)
    before = cache.snapshot_metrics()
    status, goal_v, pops, tree = _run_kernel(
        problem, cache, l_est, l_prune, eager, backend
    )
    if status == EXHAUSTED:
        return SearchResult(
            None, False, math.inf, math.inf, cache.snapshot_metrics() - before, pops
        )
    assert status == FOUND
    path = tree.trace(goal_v)
    l_path = pops[-1][1]
    opt, l_under, l_over = beauty_ps(path, l_path, cache)
    return SearchResult(
        path, opt, l_under, l_over, cache.snapshot_metrics() - before, pops
    )


def beauty(
    problem: Problem,
    cache: EstimationCache | None = None,
    l_est: float = math.inf,
    l_prune: float = math.inf,
    backend: str | None = None,
) -> SearchResult:
    """Lazy bound-tightening search.

    With the default thresholds the returned path attains the tightest
    fully-estimated lower bound and opt is True. With finite thresholds
    from an earlier pass, the guarantees weaken to the bracket documented
    on SearchResult but estimation effort drops. Pass a shared cache to
    reuse estimation work across calls.
    """
    return _search(problem, cache, l_est, l_prune, eager=False, backend=backend)


def ei_ucs(
    problem: Problem,
    cache: EstimationCache | None = None,
    backend: str | None = None,
) -> SearchResult:
    """Estimation-indifferent baseline: fully estimate every touched edge.

    Expands vertices in exactly the same order as beauty with infinite
    thresholds, but pays for every estimator on every examined edge, so
    its result is always certified (opt=True when a path is found).
    """
    return _search(problem, cache, math.inf, math.inf, eager=True, backend=backend)
