"""Edge colorings of complete graphs.

Vertices are labels ``1..n``. Edge colors live in a flat triangular array
indexed by the colexicographic position of the pair, so that

    (1,2) -> 0, (1,3) -> 1, (2,3) -> 2, (1,4) -> 3, ...

Color identifiers are always normalized: scanning edges in colex order, the
first new color seen is 0, the next new one is 1, and so on.  Two colorings
that differ only by a renaming of colors therefore compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

VertexSet = tuple[int, ...]


class ColoringError(ValueError):
    """Raised for malformed edge lists or vertex sets."""


def pair_index(u: int, v: int) -> int:
    """Colex index of the unordered pair {u, v} (1-based labels)."""
    if u > v:
        u, v = v, u
    return (v - 1) * (v - 2) // 2 + (u - 1)


def num_edges(n: int) -> int:
    return n * (n - 1) // 2


def colex_pairs(n: int) -> list[tuple[int, int]]:
    """All pairs u < v of ``1..n`` in colex order."""
    return [(u, v) for v in range(2, n + 1) for u in range(1, v)]


def normalize_colors(raw: Iterable[int]) -> tuple[tuple[int, ...], dict[int, int]]:
    """Rename colors to first-occurrence order; returns (colors, renaming)."""
    renaming: dict[int, int] = {}
    out = []
    for c in raw:
        if c not in renaming:
            renaming[c] = len(renaming)
        out.append(renaming[c])
    return tuple(out), renaming


@dataclass(frozen=True)
class EdgeColoring:
    """An edge coloring of K_n with normalized colors.

    Build instances through :func:`from_edge_list` or :meth:`from_flat`;
    the constructor assumes ``colors`` is already normalized.
    """

    n: int
    colors: tuple[int, ...]
    color_count: int = field(init=False)

    def __post_init__(self):
        if self.n < 1:
            raise ColoringError(f"vertex count must be positive, got {self.n}")
        if len(self.colors) != num_edges(self.n):
            raise ColoringError(
                f"expected {num_edges(self.n)} edge colors for n={self.n}, got {len(self.colors)}"
            )
        object.__setattr__(self, "color_count", len(set(self.colors)))

    @classmethod
    def from_flat(cls, n: int, raw: Sequence[int]) -> "EdgeColoring":
        colors, _ = normalize_colors(raw)
        return cls(n, colors)

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise ColoringError(f"no edge on a single vertex {u}")
        return self.colors[pair_index(u, v)]

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(u, v, color)`` in colex order."""
        for (u, v), c in zip(colex_pairs(self.n), self.colors):
            yield u, v, c

    def is_normalized(self) -> bool:
        return normalize_colors(self.colors)[0] == self.colors


def from_edge_list(n: int, entries: Iterable[tuple[int, int, int]]) -> EdgeColoring:
    """Build a coloring from ``(u, v, raw_color)`` triples covering every pair once."""
    if n < 1:
        raise ColoringError(f"vertex count must be positive, got {n}")
    raw: list[int | None] = [None] * num_edges(n)
    for u, v, c in entries:
        if not (1 <= u <= n and 1 <= v <= n) or u == v:
            raise ColoringError(f"pair {{{u},{v}}} out of range for n={n}")
        idx = pair_index(u, v)
        if raw[idx] is not None:
            raise ColoringError(f"duplicate pair {{{min(u, v)},{max(u, v)}}}")
        raw[idx] = c
    for (u, v), c in zip(colex_pairs(n), raw):
        if c is None:
            raise ColoringError(f"missing pair {{{u},{v}}}")
    return EdgeColoring.from_flat(n, raw)  # type: ignore[arg-type]


def as_vertex_set(chi: EdgeColoring, members: Iterable[int]) -> VertexSet:
    s = tuple(sorted(set(members)))
    for v in s:
        if not 1 <= v <= chi.n:
            raise ColoringError(f"vertex {v} out of range 1..{chi.n}")
    return s


def color_degree(chi: EdgeColoring, v: int, i: int) -> int:
    """|N_i(v)|: the number of neighbors of v joined by color i."""
    return sum(1 for u in chi.vertices if u != v and chi.color(u, v) == i)


def neighborhood_in_color(chi: EdgeColoring, v: int, i: int) -> VertexSet:
    return tuple(u for u in chi.vertices if u != v and chi.color(u, v) == i)


def edges_in_color(chi: EdgeColoring, U: Iterable[int], i: int) -> int:
    """e_i(U): edges of color i with both endpoints in U."""
    U = as_vertex_set(chi, U)
    return sum(1 for u, v in combinations(U, 2) if chi.color(u, v) == i)


def color_degrees(chi: EdgeColoring, within: Iterable[int] | None = None) -> dict[tuple[int, int], int]:
    """Map ``(v, color) -> |N_color(v) ∩ within|`` over nonzero entries."""
    members = chi.vertices if within is None else as_vertex_set(chi, within)
    deg: dict[tuple[int, int], int] = {}
    for u, v in combinations(members, 2):
        c = chi.color(u, v)
        deg[u, c] = deg.get((u, c), 0) + 1
        deg[v, c] = deg.get((v, c), 0) + 1
    return deg


def max_color_degree(chi: EdgeColoring, within: Iterable[int] | None = None) -> tuple[int, int, int] | None:
    """Return ``(v, color, degree)`` of the largest color degree.

    Ties go to the lowest vertex, then the lowest color. ``None`` when there
    are no edges.
    """
    deg = color_degrees(chi, within)
    if not deg:
        return None
    (v, c), d = min(deg.items(), key=lambda kv: (-kv[1], kv[0][0], kv[0][1]))
    return v, c, d


def is_delta_good(chi: EdgeColoring, delta: int) -> tuple[bool, tuple[int, int] | None]:
    """Check that every color class has maximum degree at most ``delta``.

    On failure the second item is a ``(v, color)`` pair of maximum color degree.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    top = max_color_degree(chi)
    if top is None or top[2] <= delta:
        return True, None
    return False, (top[0], top[1])


def restrict(chi: EdgeColoring, U: Iterable[int]) -> tuple[EdgeColoring, VertexSet]:
    """Induced coloring on U, relabeled order-preservingly to ``1..|U|``.

    Returns the restricted coloring and the map ``new label k -> mapping[k-1]``.
    """
    U = as_vertex_set(chi, U)
    if not U:
        raise ColoringError("cannot restrict to an empty vertex set")
    raw = [chi.color(U[a - 1], U[b - 1]) for a, b in colex_pairs(len(U))]
    return EdgeColoring.from_flat(len(U), raw), U


def recolor(chi: EdgeColoring, renaming: dict[int, int]) -> list[tuple[int, int, int]]:
    """Edge list of ``chi`` with colors passed through ``renaming`` (not normalized)."""
    return [(u, v, renaming[c]) for u, v, c in chi.edges()]
