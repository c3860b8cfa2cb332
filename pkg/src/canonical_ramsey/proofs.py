"""Constructive proof steps run as algorithms.

Every witness these procedures return is re-verified against the host
coloring before it leaves this module.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Sequence

import numpy as np

from .core import EdgeColoring, VertexSet, as_vertex_set, max_color_degree, neighborhood_in_color
from .detectors import CliqueWitness, Kind, find_clique, verify_witness

FOUND = "found"
UNMET = "precondition-unmet"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class StructureCounts:
    """Same-color edge pairs sharing a vertex (x), disjoint same-color pairs (y), special edges (z)."""

    x: int
    y: int
    z: int

    @property
    def total(self) -> int:
        return self.x + self.y + self.z


@dataclass
class ExtractionReport:
    outcome: str
    witness: CliqueWitness | None = None
    trace: list[str] = field(default_factory=list)
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.outcome == FOUND


@dataclass
class SamplingReport:
    success: bool
    witness: CliqueWitness | None
    tries_used: int
    best: StructureCounts | None
    special: int | None
    sample: VertexSet | None = None


def heavy_color(chi: EdgeColoring, V: Iterable[int]) -> int | None:
    """Color of the largest color degree inside V (ties: lowest vertex, then color)."""
    top = max_color_degree(chi, V)
    return None if top is None else top[1]


def count_structures(chi: EdgeColoring, S: Iterable[int], special: int | None) -> StructureCounts:
    S = as_vertex_set(chi, S)
    if not S:
        raise ValueError("vertex set must be nonempty")
    by_color: dict[int, list[tuple[int, int]]] = {}
    for u, v in combinations(S, 2):
        by_color.setdefault(chi.color(u, v), []).append((u, v))
    x = y = z = 0
    for c, es in by_color.items():
        if c == special:
            z += len(es)
            continue
        deg: dict[int, int] = {}
        for u, v in es:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        xc = sum(d * (d - 1) // 2 for d in deg.values())
        x += xc
        y += len(es) * (len(es) - 1) // 2 - xc
    return StructureCounts(x, y, z)


def _bad_structures(chi: EdgeColoring, T: VertexSet, special: int | None) -> list[tuple[int, ...]]:
    """Vertex sets of every special edge and every same-colored pair of other edges."""
    out: list[tuple[int, ...]] = []
    by_color: dict[int, list[tuple[int, int]]] = {}
    for u, v in combinations(T, 2):
        c = chi.color(u, v)
        if c == special:
            out.append((u, v))
        else:
            by_color.setdefault(c, []).append((u, v))
    for c in sorted(by_color):
        for e, f in combinations(by_color[c], 2):
            out.append(tuple(sorted(set(e) | set(f))))
    return out


def prune_to_rainbow(chi: EdgeColoring, T: Iterable[int], special: int | None) -> VertexSet:
    """Delete vertices from T until it is rainbow with no special-color edge.

    Each deletion kills the first surviving bad structure, removing the
    vertex that sits in the most surviving structures (lowest label on ties),
    so at most ``count_structures(T).total`` vertices go.
    """
    keep = set(as_vertex_set(chi, T))
    structs = _bad_structures(chi, tuple(sorted(keep)), special)
    while True:
        alive = [s for s in structs if keep.issuperset(s)]
        if not alive:
            break
        cover: dict[int, int] = {}
        for s in alive:
            for v in s:
                cover[v] = cover.get(v, 0) + 1
        victim = min(alive[0], key=lambda v: (-cover[v], v))
        keep.discard(victim)
    return tuple(sorted(keep))


def _edge_pair_tables(size: int):
    """Position pairs of a size-subset, and edge pairs ordered with vertex-sharing pairs first."""
    pos_pairs = list(combinations(range(size), 2))
    sharing, disjoint = [], []
    for a, b in combinations(range(len(pos_pairs)), 2):
        (sharing if set(pos_pairs[a]) & set(pos_pairs[b]) else disjoint).append((a, b))
    p = np.array(pos_pairs)
    ab = np.array(sharing + disjoint)
    return p[:, 0], p[:, 1], ab[:, 0], ab[:, 1], len(sharing)


def color_matrix(chi: EdgeColoring) -> np.ndarray:
    M = np.full((chi.n + 1, chi.n + 1), -1, dtype=np.int64)
    for u, v, c in chi.edges():
        M[u, v] = M[v, u] = c
    return M


def sample_structure_counts(chi: EdgeColoring, V: Sequence[int], size: int, samples: int,
                            special: int | None, seed: int = 0) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Structure counts of ``samples`` uniform ``size``-subsets of V, vectorized.

    Returns arrays (x, y, z) of length ``samples``.
    """
    V = np.array(as_vertex_set(chi, V))
    if size > len(V):
        raise ValueError("sample size exceeds |V|")
    rng = np.random.default_rng(seed)
    M = color_matrix(chi).astype(np.int32)
    p, q, e1, e2, ns = _edge_pair_tables(size)
    T = V[np.argsort(rng.random((samples, len(V))), axis=1)[:, :size]]
    cols = M[T[:, p], T[:, q]]
    is_special = cols == (-2 if special is None else special)
    z = is_special.sum(axis=1)
    # special edges get distinct negative stand-ins so they never pair up
    cols = np.where(is_special, -1 - np.arange(cols.shape[1], dtype=np.int32), cols)
    same = cols[:, e1] == cols[:, e2]
    x = same[:, :ns].sum(axis=1)
    y = same[:, ns:].sum(axis=1)
    return x, y, z


def _one_try(chi, V, r, special, seed, t):
    rng = np.random.default_rng([seed, t])
    T = tuple(sorted(int(v) for v in rng.choice(np.array(V), size=3 * r, replace=False)))
    counts = count_structures(chi, T, special)
    pruned = None
    if counts.x + counts.y < r and counts.z < r:
        pruned = prune_to_rainbow(chi, T, special)
    return T, counts, pruned


def sample_extract_rainbow(chi: EdgeColoring, V: Iterable[int], r: int, special: int | None = None,
                           seed: int = 0, tries: int = 100, jobs: int = 1) -> SamplingReport:
    """Sample 3r-subsets of V and prune a good one down to a rainbow clique.

    A sample qualifies when it has fewer than r same-color pairs of
    non-special edges and fewer than r special edges. Try t uses the seed
    ``[seed, t]``; the lowest successful try wins whatever ``jobs`` is.
    Failure is not a proof of absence.
    """
    V = as_vertex_set(chi, V)
    if r < 2:
        raise ValueError("r must be at least 2")
    if len(V) < 3 * r:
        raise ValueError(f"|V| = {len(V)} is smaller than 3r = {3 * r}")
    if special is None:
        special = heavy_color(chi, V)
    best: StructureCounts | None = None
    best_T = None

    def results():
        if jobs <= 1:
            for t in range(tries):
                yield _one_try(chi, V, r, special, seed, t)
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                yield from pool.map(_one_try, *zip(*[(chi, V, r, special, seed, t) for t in range(tries)]))

    for t, (T, counts, pruned) in enumerate(results()):
        if best is None or counts.total < best.total:
            best, best_T = counts, T
        if pruned is not None and len(pruned) >= r:
            w = CliqueWitness(Kind.RAINBOW, pruned)
            assert verify_witness(chi, w)
            return SamplingReport(True, w, t + 1, counts, special, T)
    return SamplingReport(False, None, tries, best, special, best_T)


def _checked(chi: EdgeColoring, report: ExtractionReport) -> ExtractionReport:
    if report.witness is not None and not verify_witness(chi, report.witness):
        raise AssertionError(f"extracted witness failed verification: {report.witness}")
    return report


def ramsey2_extract(chi: EdgeColoring, W: Iterable[int], k: int) -> CliqueWitness | None:
    """Exact monochromatic K_k inside W, whose edges may use at most two colors."""
    W = as_vertex_set(chi, W)
    present = {chi.color(u, v) for u, v in combinations(W, 2)}
    if len(present) > 2:
        raise ValueError(f"{len(present)} colors appear inside W, at most 2 allowed")
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > len(W):
        return None
    return find_clique(chi, Kind.MONOCHROMATIC, k, within=W)


def claim1_extract(chi: EdgeColoring, u: int, v: int, i: int, j: int, m: int) -> ExtractionReport:
    """Lexical K_4 through u and v, or monochromatic K_m through u or v.

    Works inside W = N_j(u) ∩ N_i(v) where chi(uv) = i != j and |W| >= R(m-1).
    """
    from .search import ramsey_value

    trace: list[str] = []
    if i == j:
        return ExtractionReport(UNMET, reason="colors i and j must differ")
    if m < 3:
        return ExtractionReport(UNMET, reason="m must be at least 3")
    if u == v or chi.color(u, v) != i:
        return ExtractionReport(UNMET, reason=f"u={u} is not in N_{i}(v={v})")
    W = tuple(sorted(set(neighborhood_in_color(chi, u, j)) & set(neighborhood_in_color(chi, v, i))))
    trace.append(f"W = N_{j}({u}) & N_{i}({v}) has {len(W)} vertices")
    R = ramsey_value(m - 1)
    if R is None:
        return ExtractionReport(UNMET, trace=trace, reason=f"R({m - 1}) is out of reach of the search engine")
    if len(W) < R:
        return ExtractionReport(UNMET, trace=trace, reason=f"|W| = {len(W)} < R({m - 1}) = {R}")
    for x, y in combinations(W, 2):
        k = chi.color(x, y)
        if k not in (i, j):
            trace.append(f"edge {x}{y} has third color {k}")
            w = CliqueWitness(Kind.LEXICAL, tuple(sorted((u, v, x, y))), ordering=(v, u, x, y), levels=(i, j, k))
            return _checked(chi, ExtractionReport(FOUND, w, trace))
    trace.append(f"W is colored by {{{i},{j}}} only")
    mono = ramsey2_extract(chi, W, m - 1)
    if mono is None:
        return ExtractionReport(INCONCLUSIVE, trace=trace, reason="no monochromatic clique found in W")
    c = mono.color
    apex = v if c == i else u
    trace.append(f"monochromatic K_{m - 1} {mono.vertices} in color {c}, adding {apex}")
    w = CliqueWitness(Kind.MONOCHROMATIC, tuple(sorted(mono.vertices + (apex,))), color=c)
    return _checked(chi, ExtractionReport(FOUND, w, trace))


def claim2_extract(chi: EdgeColoring, u: int, v: int, l: int, r: int) -> ExtractionReport:
    """Monochromatic K_4, rainbow K_r, or lexical K_l inside {u, v} ∪ (N_i(u) ∩ N_i(v)), i = chi(uv)."""
    from .core import restrict

    if u == v:
        return ExtractionReport(UNMET, reason="u and v must differ")
    if l < 3 or r < 2:
        return ExtractionReport(UNMET, reason="need l >= 3 and r >= 2")
    i = chi.color(u, v)
    V = tuple(sorted(set(neighborhood_in_color(chi, u, i)) & set(neighborhood_in_color(chi, v, i))))
    trace = [f"i = {i}, V = N_{i}({u}) & N_{i}({v}) has {len(V)} vertices"]
    if not V:
        return ExtractionReport(UNMET, trace=trace, reason="common color-i neighborhood is empty")
    for x, y in combinations(V, 2):
        if chi.color(x, y) == i:
            trace.append(f"edge {x}{y} has color {i}")
            w = CliqueWitness(Kind.MONOCHROMATIC, tuple(sorted((u, v, x, y))), color=i)
            return _checked(chi, ExtractionReport(FOUND, w, trace))
    trace.append(f"no color-{i} edge inside V")
    sub, mapping = restrict(chi, V)
    if r <= len(V):
        w = find_clique(sub, Kind.RAINBOW, r)
        if w is not None:
            trace.append(f"rainbow K_{r} inside V")
            return _checked(chi, ExtractionReport(FOUND, w.relabel(mapping, chi), trace))
    if 4 <= len(V):
        w = find_clique(sub, Kind.MONOCHROMATIC, 4)
        if w is not None:
            trace.append("monochromatic K_4 inside V")
            return _checked(chi, ExtractionReport(FOUND, w.relabel(mapping, chi), trace))
    if l - 1 <= len(V):
        w = find_clique(sub, Kind.LEXICAL, l - 1)
        if w is not None:
            w = w.relabel(mapping, chi)
            trace.append(f"lexical K_{l - 1} {w.ordering} inside V, prepending {u} with level {i}")
            lifted = CliqueWitness(Kind.LEXICAL, tuple(sorted(w.vertices + (u,))),
                                   ordering=(u,) + w.ordering, levels=(i,) + w.levels)
            return _checked(chi, ExtractionReport(FOUND, lifted, trace))
    return ExtractionReport(UNMET, trace=trace, reason="V is too small to force any of the three patterns")


def default_threshold(current_size: int, level: int) -> int:
    """Heuristic descent threshold: a quarter of the current vertex set, rounded up."""
    return math.ceil(current_size / 4)


def extract_orderable_or_rainbow(chi: EdgeColoring, o: int, r: int,
                                 thresholds: Sequence[int] | Callable[[int, int], int] | None = None,
                                 seed: int = 0, tries: int = 50) -> ExtractionReport:
    """Orderable K_o or rainbow K_r by descending into heavy color neighborhoods.

    Level t looks for an orderable clique of size o - t. If some vertex v has a
    color c of degree at least the level threshold, search N_c(v) one level
    down and put v in front of what comes back. Otherwise look for a rainbow
    K_r in the current set. The last level (size 3) falls back to any
    non-rainbow triangle. An explicit ``inconclusive`` outcome is returned
    when neither happens at the current scale.
    """
    if o < 3:
        raise ValueError("o must be at least 3")
    if r < 2:
        raise ValueError("r must be at least 2")
    if thresholds is None:
        thr = default_threshold
    elif callable(thresholds):
        thr = thresholds
    else:
        if len(thresholds) != o - 2:
            raise ValueError(f"need {o - 2} thresholds, got {len(thresholds)}")
        seq = list(thresholds)
        thr = lambda size, level: seq[level]  # noqa: E731
    trace: list[str] = []
    report = _descend_level(chi, tuple(chi.vertices), o, r, 0, thr, seed, tries, trace)
    report.trace = trace
    return _checked(chi, report)


def _rainbow_attempt(chi, U, r, seed, tries, trace) -> CliqueWitness | None:
    if r > len(U):
        return None
    if len(U) >= 3 * r:
        rep = sample_extract_rainbow(chi, U, r, seed=seed, tries=tries)
        if rep.success:
            trace.append(f"sampling found a rainbow set after {rep.tries_used} tries")
            return CliqueWitness(Kind.RAINBOW, rep.witness.vertices[:r])
        trace.append("sampling failed, running exact rainbow search")
    return find_clique(chi, Kind.RAINBOW, r, within=U)


def _descend_level(chi, U, o, r, level, thr, seed, tries, trace) -> ExtractionReport:
    s = o - level
    top = max_color_degree(chi, U) if len(U) >= 2 else None
    need = max(thr(len(U), level), s - 1)
    if top is not None and top[2] >= need:
        v, c, d = top
        N = tuple(w for w in U if w != v and chi.color(v, w) == c)
        trace.append(f"level {level}: vertex {v} has {d} neighbors in color {c} (threshold {need})")
        if s == 3:
            w1, w2 = N[0], N[1]
            w = CliqueWitness(Kind.ORDERABLE, tuple(sorted((v, w1, w2))), ordering=(v, w1, w2),
                              levels=(c, chi.color(w1, w2)))
            return ExtractionReport(FOUND, w)
        sub = _descend_level(chi, N, o, r, level + 1, thr, seed, tries, trace)
        if sub.witness is not None and sub.witness.kind is Kind.ORDERABLE:
            w = sub.witness
            lifted = CliqueWitness(Kind.ORDERABLE, tuple(sorted(w.vertices + (v,))),
                                   ordering=(v,) + w.ordering, levels=(c,) + w.levels)
            trace.append(f"level {level}: prepend {v} with level color {c}")
            return ExtractionReport(FOUND, lifted)
        return sub
    trace.append(f"level {level}: no color degree reaches {need} in a set of {len(U)}")
    if s == 3 and len(U) >= 3:
        w = find_clique(chi, Kind.ORDERABLE, 3, within=U)
        if w is not None:
            trace.append(f"level {level}: non-rainbow triangle {w.vertices}")
            return ExtractionReport(FOUND, w)
    w = _rainbow_attempt(chi, U, r, seed, tries, trace)
    if w is not None:
        trace.append(f"level {level}: rainbow K_{r} {w.vertices}")
        return ExtractionReport(FOUND, w)
    return ExtractionReport(INCONCLUSIVE, reason=f"level {level}: neither a heavy color nor a rainbow K_{r}")
