"""JSON file formats for problems, weighted digraphs, and benchmark suites."""

from __future__ import annotations

import json
from pathlib import Path as FsPath

from .generators import WeightedDigraph
from .graph import Edge, EstimatedDigraph, EstimatorSpec, Problem

__all__ = [
    "problem_to_json",
    "problem_from_json",
    "load_problem",
    "dump_problem",
    "weighted_to_json",
    "weighted_from_json",
    "load_weighted",
    "dump_weighted",
    "load_suite",
]


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(f"bad input file: {msg}")


def _as_vertex(x, what: str) -> int:
    _require(isinstance(x, int) and not isinstance(x, bool), f"{what} must be an integer")
    return x


def _as_number(x, what: str) -> float:
    _require(
        isinstance(x, (int, float)) and not isinstance(x, bool),
        f"{what} must be a number",
    )
    return float(x)


def problem_to_jsonable(problem: Problem) -> dict:
    edges = []
    for e in problem.graph.edges:
        edges.append(
            {
                "from": e.tail,
                "to": e.head,
                "estimators": [[s.lower, s.upper, s.time_cost] for s in e.estimators],
                "true_cost": e.true_cost,
            }
        )
    return {
        "vertex_count": problem.graph.vertex_count,
        "start": problem.start,
        "goals": sorted(problem.goals),
        "edges": edges,
    }


def problem_to_json(problem: Problem) -> str:
    return json.dumps(problem_to_jsonable(problem), indent=2) + "\n"


def problem_from_jsonable(doc) -> Problem:
    _require(isinstance(doc, dict), "top level must be an object")
    for key in ("vertex_count", "start", "goals", "edges"):
        _require(key in doc, f"missing key {key!r}")
    n = _as_vertex(doc["vertex_count"], "vertex_count")
    start = _as_vertex(doc["start"], "start")
    _require(isinstance(doc["goals"], list) and doc["goals"], "goals must be a non-empty list")
    goals = frozenset(_as_vertex(g, "goal") for g in doc["goals"])
    _require(isinstance(doc["edges"], list), "edges must be a list")
    edges = []
    for i, rec in enumerate(doc["edges"]):
        _require(isinstance(rec, dict), f"edge {i} must be an object")
        for key in ("from", "to", "estimators"):
            _require(key in rec, f"edge {i}: missing key {key!r}")
        ests = rec["estimators"]
        _require(
            isinstance(ests, list) and ests, f"edge {i}: estimators must be a non-empty list"
        )
        specs = []
        for j, triple in enumerate(ests):
            _require(
                isinstance(triple, list) and len(triple) == 3,
                f"edge {i} estimator {j}: expected [lower, upper, time_cost]",
            )
            specs.append(
                EstimatorSpec(
                    _as_number(triple[0], f"edge {i} estimator {j} lower"),
                    _as_number(triple[1], f"edge {i} estimator {j} upper"),
                    _as_number(triple[2], f"edge {i} estimator {j} time_cost"),
                )
            )
        tc = rec.get("true_cost")
        if tc is not None:
            tc = _as_number(tc, f"edge {i} true_cost")
        edges.append(
            Edge(
                _as_vertex(rec["from"], f"edge {i} 'from'"),
                _as_vertex(rec["to"], f"edge {i} 'to'"),
                tuple(specs),
                tc,
            )
        )
    graph = EstimatedDigraph(n, edges)
    return Problem(graph, start, goals)


def problem_from_json(text: str) -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad input file: not valid JSON ({exc})") from exc
    return problem_from_jsonable(doc)


def load_problem(path) -> Problem:
    return problem_from_json(FsPath(path).read_text())


def dump_problem(problem: Problem, path) -> None:
    FsPath(path).write_text(problem_to_json(problem))


def weighted_to_jsonable(wg: WeightedDigraph) -> dict:
    return {
        "vertex_count": wg.vertex_count,
        "start": wg.start,
        "goals": sorted(wg.goals),
        "edges": [{"from": t, "to": h, "cost": c} for t, h, c in wg.edges],
    }


def weighted_to_json(wg: WeightedDigraph) -> str:
    return json.dumps(weighted_to_jsonable(wg), indent=2) + "\n"


def weighted_from_jsonable(doc) -> WeightedDigraph:
    _require(isinstance(doc, dict), "top level must be an object")
    for key in ("vertex_count", "start", "goals", "edges"):
        _require(key in doc, f"missing key {key!r}")
    n = _as_vertex(doc["vertex_count"], "vertex_count")
    start = _as_vertex(doc["start"], "start")
    _require(isinstance(doc["goals"], list) and doc["goals"], "goals must be a non-empty list")
    goals = tuple(sorted(_as_vertex(g, "goal") for g in doc["goals"]))
    _require(isinstance(doc["edges"], list), "edges must be a list")
    edges = []
    for i, rec in enumerate(doc["edges"]):
        _require(isinstance(rec, dict), f"edge {i} must be an object")
        for key in ("from", "to", "cost"):
            _require(key in rec, f"edge {i}: missing key {key!r}")
        cost = rec["cost"]
        _require(
            isinstance(cost, int) and not isinstance(cost, bool) and cost >= 1,
            f"edge {i}: cost must be a positive integer",
        )
        edges.append(
            (
                _as_vertex(rec["from"], f"edge {i} 'from'"),
                _as_vertex(rec["to"], f"edge {i} 'to'"),
                cost,
            )
        )
    return WeightedDigraph(n, start, goals, tuple(edges))


def weighted_from_json(text: str) -> WeightedDigraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad input file: not valid JSON ({exc})") from exc
    return weighted_from_jsonable(doc)


def load_weighted(path) -> WeightedDigraph:
    return weighted_from_json(FsPath(path).read_text())


def dump_weighted(wg: WeightedDigraph, path) -> None:
    FsPath(path).write_text(weighted_to_json(wg))


def load_suite(path) -> dict:
    try:
        doc = json.loads(FsPath(path).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad input file: not valid JSON ({exc})") from exc
    _require(isinstance(doc, dict), "suite must be an object")
    return doc
