"""Shared estimation state and run metrics.

An EstimationCache records, per edge, which prefix of the estimator
sequence has been applied and the tightest bounds so far. Searches thread a
cache through several runs so work is never repeated: each estimator's
time_cost is charged at most once per cache lifetime, and re-encounters
consume the saved result for free.

Metrics snapshots are immutable; subtracting two snapshots gives the cost
of whatever ran in between.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ._kernels import get_backend
from .graph import EdgeBoundState, EstimatedDigraph

__all__ = ["Metrics", "EstimationCache", "METRICS_CSV_FIELDS", "metrics_csv_row"]


@dataclass(frozen=True)
class Metrics:
    """Simulated-cost accounting for a run (or a delta between snapshots).

    layer_invocations[i] counts genuine invocations of sequence position
    i + 1, estimation_time is the sum of their time_costs, and search_time
    charges tau_v per expansion. Evaluations count successor-edge
    examinations; prunings count improving successors discarded for
    exceeding the pruning threshold.
    """

    layer_invocations: tuple[int, ...]
    expansions: int
    evaluations: int
    prunings: int
    estimation_time: float
    tau_v: float = 1.0

    @property
    def invocations(self) -> int:
        return sum(self.layer_invocations)

    @property
    def search_time(self) -> float:
        return self.tau_v * self.expansions

    @property
    def total_time(self) -> float:
        return self.estimation_time + self.search_time

    def __sub__(self, other: "Metrics") -> "Metrics":
        k = max(len(self.layer_invocations), len(other.layer_invocations))
        mine = self.layer_invocations + (0,) * (k - len(self.layer_invocations))
        theirs = other.layer_invocations + (0,) * (k - len(other.layer_invocations))
        return Metrics(
            layer_invocations=tuple(a - b for a, b in zip(mine, theirs)),
            expansions=self.expansions - other.expansions,
            evaluations=self.evaluations - other.evaluations,
            prunings=self.prunings - other.prunings,
            estimation_time=self.estimation_time - other.estimation_time,
            tau_v=self.tau_v,
        )


METRICS_CSV_FIELDS = (
    "instance_id",
    "algorithm",
    "w_1",
    "w_2",
    "w_3",
    "expansions",
    "evaluations",
    "prunings",
    "T_w",
    "T_v",
    "l_under",
    "l_over",
    "optimal_flag",
    "iterations",
)


def metrics_csv_row(
    instance_id: str,
    algorithm: str,
    metrics: Metrics,
    l_under: float,
    l_over: float,
    optimal: bool,
    iterations: int,
) -> dict:
    w = metrics.layer_invocations

    def layer(i):
        return w[i] if i < len(w) else 0

    return {
        "instance_id": instance_id,
        "algorithm": algorithm,
        "w_1": layer(0),
        "w_2": layer(1),
        "w_3": layer(2),
        "expansions": metrics.expansions,
        "evaluations": metrics.evaluations,
        "prunings": metrics.prunings,
        "T_w": metrics.estimation_time,
        "T_v": metrics.search_time,
        "l_under": l_under,
        "l_over": l_over,
        "optimal_flag": int(optimal),
        "iterations": iterations,
    }


class _StatesView:
    """Read-only edge-index -> EdgeBoundState mapping over a cache."""

    def __init__(self, cache: "EstimationCache"):
        self._cache = cache

    def __getitem__(self, eid: int) -> EdgeBoundState:
        return self._cache.state(eid)


class EstimationCache:
    """Mutable estimation state plus metric counters for one graph.

    Not safe for concurrent mutation; give each worker its own cache.
    wall_clock_scale > 0 additionally sleeps that many real seconds per
    unit of simulated estimation time.
    """

    def __init__(
        self,
        graph: EstimatedDigraph,
        tau_v: float = 1.0,
        wall_clock_scale: float = 0.0,
        backend: str | None = None,
    ):
        arr = graph.arrays()
        self.graph = graph
        self._arr = arr
        m = len(graph.edges)
        self.next_index = np.zeros(m, np.int64)
        self.tightest_lower = np.zeros(m)
        self.tightest_upper = np.full(m, math.inf)
        self.invoked = np.zeros(int(arr.est_offsets[-1]), np.bool_)
        self.layer_counts = np.zeros(arr.k_max, np.int64)
        self._tw = np.zeros(1)
        self._counters = np.zeros(3, np.int64)  # expansions, evaluations, prunings
        self.tau_v = float(tau_v)
        self.wall_clock_scale = float(wall_clock_scale)
        self._kernels = get_backend(backend)

    # -- estimation steps ---------------------------------------------------

    def sequence_length(self, eid: int) -> int:
        return int(self._arr.est_offsets[eid + 1] - self._arr.est_offsets[eid])

    def applied_count(self, eid: int) -> int:
        return int(self.next_index[eid])

    def has_remaining(self, eid: int) -> bool:
        return int(self.next_index[eid]) < self.sequence_length(eid)

    def _step(self, fn, eid: int) -> float:
        before = self._tw[0]
        low = fn(
            eid,
            self._arr.est_offsets,
            self._arr.est_lower,
            self._arr.est_upper,
            self._arr.est_time,
            self.next_index,
            self.tightest_lower,
            self.tightest_upper,
            self.invoked,
            self.layer_counts,
            self._tw,
        )
        self.sleep_for(self._tw[0] - before)
        return float(low)

    def apply_next(self, eid: int) -> tuple[float, int]:
        """Apply the next unapplied estimator; return (tightest lower, layer)."""
        if not self.has_remaining(eid):
            raise ValueError(f"edge {eid}: estimator sequence exhausted")
        layer = int(self.next_index[eid]) + 1
        low = self._step(self._kernels.apply_next, eid)
        return low, layer

    def apply_final(self, eid: int) -> float:
        """Jump to the last estimator of the sequence; return tightest lower.

        Layers between the current position and the last are skipped: they
        are never invoked, never charged, and no longer applicable.
        """
        if not self.has_remaining(eid):
            raise ValueError(f"edge {eid}: estimator sequence exhausted")
        return self._step(self._kernels.apply_final, eid)

    # -- state inspection ---------------------------------------------------

    def state(self, eid: int) -> EdgeBoundState:
        return EdgeBoundState(
            tightest_lower=float(self.tightest_lower[eid]),
            tightest_upper=float(self.tightest_upper[eid]),
            next_index=int(self.next_index[eid]),
        )

    @property
    def states(self) -> _StatesView:
        return _StatesView(self)

    def invoked_layers(self, eid: int) -> tuple[int, ...]:
        off = int(self._arr.est_offsets[eid])
        k = self.sequence_length(eid)
        return tuple(i + 1 for i in range(k) if self.invoked[off + i])

    def invocation_count(self) -> int:
        return int(self.invoked.sum())

    def final_layer_invocations(self) -> int:
        """How many edges have had their last (tightest) estimator invoked."""
        if len(self.graph.edges) == 0:
            return 0
        return int(self.invoked[self._arr.est_offsets[1:] - 1].sum())

    # -- metrics ------------------------------------------------------------

    def snapshot_metrics(self) -> Metrics:
        return Metrics(
            layer_invocations=tuple(int(c) for c in self.layer_counts),
            expansions=int(self._counters[0]),
            evaluations=int(self._counters[1]),
            prunings=int(self._counters[2]),
            estimation_time=float(self._tw[0]),
            tau_v=self.tau_v,
        )

    def sleep_for(self, simulated: float) -> None:
        if self.wall_clock_scale > 0.0 and simulated > 0.0:
            time.sleep(simulated * self.wall_clock_scale)
