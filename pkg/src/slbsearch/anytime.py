"""Anytime wrapper: repeat the lazy search with self-supplied thresholds.

Each pass runs ``beauty`` with l_est set to the best certified lower bound
so far and l_prune to the best fully-estimated path bound so far, sharing
one estimation cache throughout so no estimator is ever paid for twice.
The bracket [l_under, l_over] tightens monotonically until a pass certifies
its path, which the final pass forces by setting both thresholds to l_over.
Interrupted early, the best path found so far is still a valid answer with
suboptimality capped by l_over / l_under.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .estimation import EstimationCache, Metrics
from .graph import Path, Problem
from .search import beauty

__all__ = ["IterationRecord", "AnytimeResult", "a_beauty", "write_iteration_csv"]


@dataclass(frozen=True)
class IterationRecord:
    """One pass of the anytime loop.

    l_under and l_over are the bracket after the pass (l_over already
    folded with previous passes); metrics_delta is the cost of this pass
    alone.
    """

    iteration: int
    path: Path | None
    l_under: float
    l_over: float
    metrics_delta: Metrics


@dataclass(frozen=True)
class AnytimeResult:
    path: Path | None
    l_star: float
    log: tuple[IterationRecord, ...]

    @property
    def found(self) -> bool:
        return self.path is not None

    @property
    def iterations(self) -> int:
        return len(self.log)


def a_beauty(
    problem: Problem,
    max_iterations: int = 10,
    epsilon: float | None = None,
    cache: EstimationCache | None = None,
    backend: str | None = None,
) -> AnytimeResult:
    """Iterate the lazy search to a certified tightest bound.

    Runs at most max_iterations passes; the last allowed pass (or the pass
    after the bracket ratio l_over/l_under drops to 1 + epsilon, when
    epsilon is given) is forced to certify by setting l_est = l_prune =
    l_over. Returns the certified path, its bound, and the per-pass log.
    An unreachable goal yields (None, inf) after a single exhausting pass.
    """
    if max_iterations < 1:
        raise ValueError("max_iterations must be at least 1")
    if epsilon is not None and epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    if cache is None:
        cache = EstimationCache(problem.graph)
    l_under = 0.0
    l_over = math.inf
    log: list[IterationRecord] = []
    path: Path | None = None
    for it in range(1, max_iterations + 1):
        close_enough = (
            epsilon is not None
            and l_under > 0.0
            and math.isfinite(l_over)
            and l_over / l_under <= 1.0 + epsilon
        )
        force = it == max_iterations or close_enough
        l_est = l_over if force else l_under
        res = beauty(problem, cache, l_est=l_est, l_prune=l_over, backend=backend)
        if not res.found:
            log.append(IterationRecord(it, None, math.inf, math.inf, res.metrics))
            return AnytimeResult(None, math.inf, tuple(log))
        path = res.path
        l_under = res.l_under
        l_over = min(l_over, res.l_over)
        log.append(IterationRecord(it, path, l_under, l_over, res.metrics))
        if res.opt or force:
            break
    return AnytimeResult(path, l_over, tuple(log))


ITERATION_CSV_FIELDS = (
    "instance_id",
    "algorithm",
    "iteration",
    "l_under",
    "l_over",
    "w_1",
    "w_2",
    "w_3",
    "expansions",
    "evaluations",
    "prunings",
    "T_w",
    "T_v",
)


def iteration_csv_rows(instance_id: str, algorithm: str, result: AnytimeResult):
    for rec in result.log:
        w = rec.metrics_delta.layer_invocations

        def layer(i):
            return w[i] if i < len(w) else 0

        yield {
            "instance_id": instance_id,
            "algorithm": algorithm,
            "iteration": rec.iteration,
            "l_under": rec.l_under,
            "l_over": rec.l_over,
            "w_1": layer(0),
            "w_2": layer(1),
            "w_3": layer(2),
            "expansions": rec.metrics_delta.expansions,
            "evaluations": rec.metrics_delta.evaluations,
            "prunings": rec.metrics_delta.prunings,
            "T_w": rec.metrics_delta.estimation_time,
            "T_v": rec.metrics_delta.search_time,
        }


def write_iteration_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=ITERATION_CSV_FIELDS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
