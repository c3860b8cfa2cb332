"""Exact search for colorings that avoid a bundle of canonical patterns.

Edges are colored in colex order and each edge may take any color already
in use or the next fresh one (a restricted-growth string), so every coloring
is visited once up to color renaming. After each assignment only pattern
occurrences through the new edge are checked. Exhausting the tree proves
that no avoiding coloring exists.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .core import EdgeColoring, colex_pairs, num_edges
from .detectors import CliqueWitness, Kind, anchored_violation, find_clique, find_ordered_canonical, index_table


@dataclass(frozen=True)
class PatternQuery:
    forbid_mono: int | None = None
    forbid_lexical: int | None = None
    forbid_rainbow: int | None = None
    forbid_orderable: int | None = None
    forbid_ordered_canonical: int | None = None
    max_colors: int | None = None

    def __post_init__(self):
        ts = self.thresholds()
        if not ts:
            raise ValueError("a pattern query needs at least one forbidden pattern")
        for name, k in ts:
            if k < 2:
                raise ValueError(f"threshold for {name} must be at least 2, got {k}")
        if self.max_colors is not None and self.max_colors < 1:
            raise ValueError("max_colors must be at least 1")

    def thresholds(self) -> list[tuple[str, int]]:
        """(kind, size) pairs in the fixed checking order."""
        pairs = [
            ("monochromatic", self.forbid_mono),
            ("lexical", self.forbid_lexical),
            ("rainbow", self.forbid_rainbow),
            ("orderable", self.forbid_orderable),
            ("ordered_canonical", self.forbid_ordered_canonical),
        ]
        return [(kd, k) for kd, k in pairs if k is not None]

    def label(self) -> str:
        short = {"monochromatic": "mono", "ordered_canonical": "ordered"}
        parts = [f"{short.get(kd, kd)}={k}" for kd, k in self.thresholds()]
        if self.max_colors is not None:
            parts.append(f"colors={self.max_colors}")
        return ",".join(parts)


def er_query(m: int, l: int, r: int) -> PatternQuery:
    return PatternQuery(forbid_mono=m, forbid_lexical=l, forbid_rainbow=r)


def cr_query(o: int, r: int) -> PatternQuery:
    return PatternQuery(forbid_orderable=o, forbid_rainbow=r)


@dataclass
class AvoidanceResult:
    status: str  # "found" | "absent" | "inconclusive"
    witness: EdgeColoring | None
    nodes: int
    seconds: float = 0.0


@dataclass
class SearchOutcome:
    query: PatternQuery
    status: str  # "exact" | "lower-bound-only"
    value: int
    extremal_witness: EdgeColoring
    nodes_explored: int
    wall_time: float
    per_n: list[tuple[int, str, int]] = field(default_factory=list)


class _Budget(Exception):
    pass


def _dfs(n, cols, start, stop, checks, max_colors, counter, node_budget, deadline) -> Iterator[list[int]]:
    """Backtrack over edges ``start..stop-1``; yields each surviving assignment at ``stop``.

    ``cols[:start]`` is a fixed prefix. ``counter`` is a one-element list
    incremented per color tried.
    """
    if start == stop:
        yield cols
        return
    pairs = colex_pairs(n)
    idx = index_table(n)
    top = [-1] * (stop + 1)
    top[start] = max(cols[:start], default=-1)
    cap = None if max_colors is None else max_colors - 1
    e = start
    cols[e] = -1
    while e >= start:
        c = cols[e] + 1
        limit = top[e] + 1
        if cap is not None and limit > cap:
            limit = cap
        if c > limit:
            cols[e] = -1
            e -= 1
            continue
        cols[e] = c
        counter[0] += 1
        if node_budget is not None and counter[0] > node_budget:
            raise _Budget
        if deadline is not None and counter[0] & 1023 == 0 and time.monotonic() > deadline:
            raise _Budget
        a, b = pairs[e]
        if any(anchored_violation(cols, idx, a, b, kd, k) for kd, k in checks):
            continue
        top[e + 1] = c if c > top[e] else top[e]
        if e + 1 == stop:
            yield cols
            continue
        e += 1
        cols[e] = -1


def enumerate_colorings(n: int, max_colors: int | None = None) -> Iterator[EdgeColoring]:
    """Every coloring of K_n up to color renaming (Bell(n(n-1)/2) of them when uncapped)."""
    if n == 1:
        yield EdgeColoring(1, ())
        return
    E = num_edges(n)
    for cols in _dfs(n, [-1] * E, 0, E, [], max_colors, [0], None, None):
        yield EdgeColoring(n, tuple(cols))


def _subtree(n, prefix, checks, max_colors, node_budget, deadline):
    """Search below one prefix; returns (status, colors or None, nodes)."""
    E = num_edges(n)
    cols = list(prefix) + [-1] * (E - len(prefix))
    counter = [0]
    try:
        for full in _dfs(n, cols, len(prefix), E, checks, max_colors, counter, node_budget, deadline):
            return "found", list(full), counter[0]
    except _Budget:
        return "inconclusive", None, counter[0]
    return "absent", None, counter[0]


def _split_depth(n: int) -> int:
    return min(num_edges(n), 6)


def exists_avoiding(
    n: int,
    query: PatternQuery,
    node_budget: int | None = None,
    time_budget: float | None = None,
    jobs: int = 1,
) -> AvoidanceResult:
    """Find a coloring of K_n avoiding every pattern in ``query``, or prove none exists.

    The tree is split at a fixed shallow edge prefix; subtrees are resolved in
    prefix order, so the witness and node count do not depend on ``jobs``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    t0 = time.monotonic()
    if n == 1:
        return AvoidanceResult("found", EdgeColoring(1, ()), 0, 0.0)
    deadline = None if time_budget is None else t0 + time_budget
    checks = query.thresholds()
    depth = _split_depth(n)
    counter = [0]
    try:
        prefixes = [list(p[:depth]) for p in _dfs(n, [-1] * num_edges(n), 0, depth, checks,
                                                 query.max_colors, counter, node_budget, deadline)]
    except _Budget:
        return AvoidanceResult("inconclusive", None, counter[0], time.monotonic() - t0)
    used = counter[0]

    def finish(status, cols=None):
        w = None if cols is None else EdgeColoring(n, tuple(cols))
        return AvoidanceResult(status, w, used, time.monotonic() - t0)

    if jobs <= 1 or len(prefixes) <= 1:
        for p in prefixes:
            remaining = None if node_budget is None else node_budget - used
            status, cols, nodes = _subtree(n, p, checks, query.max_colors, remaining, deadline)
            used += nodes
            if status != "absent":
                return finish(status, cols)
        return finish("absent")

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_subtree, n, p, checks, query.max_colors, node_budget, deadline) for p in prefixes]
        try:
            for fut in futures:
                status, cols, nodes = fut.result()
                remaining = None if node_budget is None else node_budget - used
                if remaining is not None and nodes > remaining:
                    used = node_budget
                    return finish("inconclusive")
                used += nodes
                if status != "absent":
                    return finish(status, cols)
        finally:
            for fut in futures:
                fut.cancel()
    return finish("absent")


def _trivial_witness(n: int) -> EdgeColoring:
    return EdgeColoring(n, (0,) * num_edges(n))


def compute_number(
    query: PatternQuery,
    n_cap: int,
    node_budget: int | None = None,
    time_budget: float | None = None,
    jobs: int = 1,
) -> SearchOutcome:
    """Smallest n at which every coloring of K_n contains a forbidden pattern.

    Below the smallest threshold no pattern fits, so the scan starts there.
    A witness at n restricts to one at n - 1, so the first proven-absent n
    is the value. Budgets and ``n_cap`` only ever weaken the answer to a
    lower bound.
    """
    if n_cap < 2:
        raise ValueError("n_cap must be at least 2")
    t0 = time.monotonic()
    start = max(2, min(k for _, k in query.thresholds()))
    witness = _trivial_witness(min(start, n_cap + 1) - 1)
    nodes = 0
    per_n = []
    for n in range(start, n_cap + 1):
        remaining_t = None if time_budget is None else max(0.0, time_budget - (time.monotonic() - t0))
        remaining_n = None if node_budget is None else node_budget - nodes
        res = exists_avoiding(n, query, remaining_n, remaining_t, jobs)
        nodes += res.nodes
        per_n.append((n, res.status, res.nodes))
        if res.status == "absent":
            return SearchOutcome(query, "exact", n, witness, nodes, time.monotonic() - t0, per_n)
        if res.status == "inconclusive":
            return SearchOutcome(query, "lower-bound-only", n, witness, nodes, time.monotonic() - t0, per_n)
        witness = res.witness
    return SearchOutcome(query, "lower-bound-only", n_cap + 1, witness, nodes, time.monotonic() - t0, per_n)


def ramsey_number(k: int, colors: int = 2, n_cap: int = 8, node_budget: int | None = None,
                  time_budget: float | None = None, jobs: int = 1) -> SearchOutcome:
    if k < 2:
        raise ValueError("k must be at least 2")
    return compute_number(PatternQuery(forbid_mono=k, max_colors=colors), n_cap, node_budget, time_budget, jobs)


@lru_cache(maxsize=None)
def ramsey_value(k: int) -> int | None:
    """Engine-computed two-color R(k), or ``None`` when out of desk reach."""
    if k < 2:
        raise ValueError("k must be at least 2")
    out = ramsey_number(k, n_cap=8, node_budget=200_000)
    return out.value if out.status == "exact" else None


def verify_avoids(chi: EdgeColoring, query: PatternQuery) -> tuple[bool, CliqueWitness | None]:
    """Check ``chi`` against every forbidden pattern; returns the first violation found."""
    if query.max_colors is not None and chi.color_count > query.max_colors:
        return False, None
    for kind, k in query.thresholds():
        if k > chi.n:
            continue
        if kind == "ordered_canonical":
            w = find_ordered_canonical(chi, k)
        else:
            w = find_clique(chi, Kind(kind), k)
        if w is not None:
            return False, w
    return True, None
