"""Named colorings and the blow-up product."""

from __future__ import annotations

import numpy as np

from .core import EdgeColoring, colex_pairs, num_edges, pair_index
from .detectors import Kind, find_clique


def _need(n: int):
    if n < 2:
        raise ValueError(f"need at least 2 vertices, got {n}")


def mono_coloring(n: int) -> EdgeColoring:
    _need(n)
    return EdgeColoring(n, (0,) * num_edges(n))


def rainbow_coloring(n: int) -> EdgeColoring:
    _need(n)
    return EdgeColoring(n, tuple(range(num_edges(n))))


def lexical_coloring(n: int) -> EdgeColoring:
    """chi(uv) = min(u, v) - 1; lower lexical under the natural order."""
    _need(n)
    return EdgeColoring.from_flat(n, [u - 1 for u, _ in colex_pairs(n)])


def random_coloring(n: int, k: int, seed: int = 0) -> EdgeColoring:
    """Each edge colored independently and uniformly from k colors."""
    _need(n)
    if not 1 <= k <= num_edges(n):
        raise ValueError(f"color count {k} out of range 1..{num_edges(n)}")
    rng = np.random.default_rng(seed)
    return EdgeColoring.from_flat(n, rng.integers(0, k, size=num_edges(n)).tolist())


def random_delta_good(n: int, delta: int, seed: int = 0) -> EdgeColoring:
    """Random coloring in which every color class has maximum degree <= delta.

    Edges are visited in random order; each takes a uniform color among those
    still below delta at both endpoints, or a fresh color if there is none.
    """
    _need(n)
    if delta < 1:
        raise ValueError("delta must be at least 1")
    rng = np.random.default_rng(seed)
    pairs = colex_pairs(n)
    raw = [0] * len(pairs)
    deg: list[dict[int, int]] = [dict() for _ in range(n + 1)]
    ncolors = 0
    for e in rng.permutation(len(pairs)).tolist():
        u, v = pairs[e]
        ok = [c for c in range(ncolors) if deg[u].get(c, 0) < delta and deg[v].get(c, 0) < delta]
        if ok:
            c = ok[int(rng.integers(len(ok)))]
        else:
            c = ncolors
            ncolors += 1
        raw[e] = c
        deg[u][c] = deg[u].get(c, 0) + 1
        deg[v][c] = deg[v].get(c, 0) + 1
    return EdgeColoring.from_flat(n, raw)


def product(outer: EdgeColoring, inner: EdgeColoring) -> EdgeColoring:
    """Blow-up product on ``outer.n * inner.n`` vertices.

    Vertex ``(i-1)*S + u`` is copy u of block i, where S = inner.n. Edges
    inside a block take the inner color; edges between blocks i != j take the
    outer color of {i, j}, shifted past the inner palette.
    """
    B, S = outer.n, inner.n
    if B < 2 or S < 2:
        raise ValueError("both factors need at least 2 vertices")
    off = inner.color_count
    raw = []
    for x, y in colex_pairs(B * S):
        i, ui = divmod(x - 1, S)
        j, uj = divmod(y - 1, S)
        if i == j:
            raw.append(inner.colors[pair_index(ui + 1, uj + 1)])
        else:
            raw.append(off + outer.colors[pair_index(i + 1, j + 1)])
    return EdgeColoring.from_flat(B * S, raw)


def iterated_product(base3: EdgeColoring, times: int) -> EdgeColoring:
    """Fold ``product`` left-associatively: ``product(...product(base3, base3)..., base3)``.

    ``base3`` must avoid monochromatic and lexical triangles.
    """
    if times < 0:
        raise ValueError("times must be nonnegative")
    if base3.n >= 3:
        for kind in (Kind.MONOCHROMATIC, Kind.LEXICAL):
            w = find_clique(base3, kind, 3)
            if w is not None:
                raise ValueError(f"base coloring contains a {kind.value} triangle {w.vertices}")
    acc = base3
    for _ in range(times):
        acc = product(acc, base3)
    return acc
