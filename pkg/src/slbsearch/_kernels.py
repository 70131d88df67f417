"""Search kernels over flat arrays, built for two backends from one source.

The hot loops are written once, in nopython-compatible style, inside
``_build``. Called with jit=True the loops are compiled with numba; with
jit=False the same closures run as plain Python over numpy arrays. The
backend is picked by the SLBSEARCH_BACKEND environment variable ("numba" or
"numpy"); unset, it defaults to numba when importable.

Estimation state lives in caller-owned arrays (next_index, tight_lower,
tight_upper, invoked, layer_counts, tw_box) so a cache can be threaded
through several searches. Metric counters sit in small boxes mutated in
place: counters = [expansions, evaluations, prunings], tw_box = [simulated
estimation time].
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    NUMBA_AVAILABLE = False

ENV_VAR = "SLBSEARCH_BACKEND"

# run_search status codes
FOUND = 0
EXHAUSTED = 1
CORRUPT = 2  # a closed vertex improved; impossible with valid bounds


def _build(jit: bool):
    if jit:
        deco = numba.njit(cache=True)
    else:
        def deco(f):
            return f

    @deco
    def heap_push(keys, seqs, verts, size, key, seq, v):
        # binary min-heap on (key, seq); seq is the insertion counter, so
        # equal keys pop in FIFO order
        i = size
        keys[i] = key
        seqs[i] = seq
        verts[i] = v
        while i > 0:
            p = (i - 1) >> 1
            if keys[i] < keys[p] or (keys[i] == keys[p] and seqs[i] < seqs[p]):
                keys[i], keys[p] = keys[p], keys[i]
                seqs[i], seqs[p] = seqs[p], seqs[i]
                verts[i], verts[p] = verts[p], verts[i]
                i = p
            else:
                break
        return size + 1

    @deco
    def heap_pop(keys, seqs, verts, size):
        key = keys[0]
        seq = seqs[0]
        v = verts[0]
        size -= 1
        if size > 0:
            keys[0] = keys[size]
            seqs[0] = seqs[size]
            verts[0] = verts[size]
            i = 0
            while True:
                l = 2 * i + 1
                r = l + 1
                m = i
                if l < size and (
                    keys[l] < keys[m] or (keys[l] == keys[m] and seqs[l] < seqs[m])
                ):
                    m = l
                if r < size and (
                    keys[r] < keys[m] or (keys[r] == keys[m] and seqs[r] < seqs[m])
                ):
                    m = r
                if m == i:
                    break
                keys[i], keys[m] = keys[m], keys[i]
                seqs[i], seqs[m] = seqs[m], seqs[i]
                verts[i], verts[m] = verts[m], verts[i]
                i = m
        return key, seq, v, size

    @deco
    def apply_next(
        eid,
        est_offsets,
        est_lower,
        est_upper,
        est_time,
        next_index,
        tight_lower,
        tight_upper,
        invoked,
        layer_counts,
        tw_box,
    ):
        # apply the next unapplied estimator of one edge; charge its
        # time_cost once per cache lifetime
        layer = next_index[eid]
        flat = est_offsets[eid] + layer
        if not invoked[flat]:
            invoked[flat] = True
            layer_counts[layer] += 1
            tw_box[0] += est_time[flat]
        if est_lower[flat] > tight_lower[eid]:
            tight_lower[eid] = est_lower[flat]
        if est_upper[flat] < tight_upper[eid]:
            tight_upper[eid] = est_upper[flat]
        next_index[eid] = layer + 1
        return tight_lower[eid]

    @deco
    def apply_final(
        eid,
        est_offsets,
        est_lower,
        est_upper,
        est_time,
        next_index,
        tight_lower,
        tight_upper,
        invoked,
        layer_counts,
        tw_box,
    ):
        # jump straight to the last (tightest) estimator; intermediate
        # layers are skipped, never charged, and marked consumed
        last = est_offsets[eid + 1] - est_offsets[eid] - 1
        flat = est_offsets[eid] + last
        if not invoked[flat]:
            invoked[flat] = True
            layer_counts[last] += 1
            tw_box[0] += est_time[flat]
        if est_lower[flat] > tight_lower[eid]:
            tight_lower[eid] = est_lower[flat]
        if est_upper[flat] < tight_upper[eid]:
            tight_upper[eid] = est_upper[flat]
        next_index[eid] = last + 1
        return tight_lower[eid]

    @deco
    def run_search(
        indptr,
        succ_vertex,
        succ_edge,
        est_offsets,
        est_lower,
        est_upper,
        est_time,
        next_index,
        tight_lower,
        tight_upper,
        invoked,
        layer_counts,
        tw_box,
        counters,
        start,
        goal_mask,
        l_est,
        l_prune,
        eager,
        pop_verts,
        pop_keys,
        parent_vertex,
        parent_edge,
    ):
        """Best-first search on accumulated lower bounds.

        Lazy mode (eager=False): while a successor's tentative bound still
        beats its recorded one and the edge has unapplied estimators, take
        one estimation step; previously cached work is consumed as a single
        free step, after which genuinely new estimators are invoked and
        charged. Estimation stops early once the tentative bound exceeds
        l_est. Successors are recorded only if they improve and their bound
        does not exceed l_prune; improving bounds above l_prune count as
        prunings.

        Eager mode: every examined edge is fully estimated up front and no
        estimation cutoff applies (the baseline behavior).

        Returns (status, goal_vertex, pop_count); pops and the parent tree
        are written into the caller's arrays.
        """
        n = indptr.shape[0] - 1
        m = succ_vertex.shape[0]
        g = np.full(n, np.inf)
        closed = np.zeros(n, np.bool_)
        cap = m + 2
        hkeys = np.empty(cap)
        hseqs = np.empty(cap, np.int64)
        hverts = np.empty(cap, np.int64)
        for i in range(n):
            parent_vertex[i] = -1
            parent_edge[i] = -1
        size = 0
        seq = 0
        npops = 0
        g[start] = 0.0
        size = heap_push(hkeys, hseqs, hverts, size, 0.0, seq, start)
        seq += 1
        while size > 0:
            key, _, v, size = heap_pop(hkeys, hseqs, hverts, size)
            if closed[v] or key != g[v]:
                continue  # stale entry superseded by a better key
            pop_verts[npops] = v
            pop_keys[npops] = key
            npops += 1
            if goal_mask[v]:
                return FOUND, v, npops
            closed[v] = True
            counters[0] += 1
            for ptr in range(indptr[v], indptr[v + 1]):
                s = succ_vertex[ptr]
                eid = succ_edge[ptr]
                counters[1] += 1
                k_e = est_offsets[eid + 1] - est_offsets[eid]
                gt = key
                if eager:
                    while next_index[eid] < k_e:
                        apply_next(
                            eid,
                            est_offsets,
                            est_lower,
                            est_upper,
                            est_time,
                            next_index,
                            tight_lower,
                            tight_upper,
                            invoked,
                            layer_counts,
                            tw_box,
                        )
                    gt = key + tight_lower[eid]
                else:
                    pos = 0
                    while gt < g[s] and pos < k_e:
                        if pos < next_index[eid]:
                            val = tight_lower[eid]
                        else:
                            val = apply_next(
                                eid,
                                est_offsets,
                                est_lower,
                                est_upper,
                                est_time,
                                next_index,
                                tight_lower,
                                tight_upper,
                                invoked,
                                layer_counts,
                                tw_box,
                            )
                        pos = next_index[eid]
                        gt = key + val
                        if gt > l_est:
                            break
                if gt < g[s]:
                    if closed[s]:
                        return CORRUPT, s, npops
                    if gt <= l_prune:
                        g[s] = gt
                        parent_vertex[s] = v
                        parent_edge[s] = eid
                        size = heap_push(hkeys, hseqs, hverts, size, gt, seq, s)
                        seq += 1
                    else:
                        counters[2] += 1
        return EXHAUSTED, -1, npops

    return {
        "heap_push": heap_push,
        "heap_pop": heap_pop,
        "apply_next": apply_next,
        "apply_final": apply_final,
        "run_search": run_search,
    }


class Backend:
    """Bundle of kernel callables for one execution mode."""

    def __init__(self, name: str):
        if name == "numba" and not NUMBA_AVAILABLE:
            raise RuntimeError("numba backend requested but numba is not importable")
        if name not in ("numba", "numpy"):
            raise ValueError(f"unknown backend {name!r}")
        self.name = name
        fns = _build(jit=(name == "numba"))
        self.heap_push = fns["heap_push"]
        self.heap_pop = fns["heap_pop"]
        self.apply_next = fns["apply_next"]
        self.apply_final = fns["apply_final"]
        self.run_search = fns["run_search"]


_BACKENDS: dict[str, Backend] = {}


def default_backend_name() -> str:
    env = os.environ.get(ENV_VAR, "").strip().lower()
    if env:
        return env
    return "numba" if NUMBA_AVAILABLE else "numpy"


def get_backend(name: str | None = None) -> Backend:
    resolved = name if name is not None else default_backend_name()
    if resolved not in _BACKENDS:
        _BACKENDS[resolved] = Backend(resolved)
    return _BACKENDS[resolved]
