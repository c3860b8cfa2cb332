"""Canonical pattern detection with certificates.

Orderable and lexical sets are found by peeling: a vertex whose edges into
the rest are all one color can be placed first. For orderable sets any such
vertex works (deleting a vertex keeps a set orderable), so the peel is
greedy. For lexical sets the level color must also be absent from the rest,
and the peel backtracks over candidates.

Most helpers here work on a flat color sequence ``cols`` indexed through an
index table ``idx[u][v]``; this lets the search engine call them on partial
assignments as long as every edge inside the tested set is assigned.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from typing import Callable, Iterable, Sequence

from .core import ColoringError, EdgeColoring, VertexSet, as_vertex_set, pair_index


class Kind(str, Enum):
    MONOCHROMATIC = "monochromatic"
    RAINBOW = "rainbow"
    LEXICAL = "lexical"
    ORDERABLE = "orderable"
    UPPER_LEXICAL = "upper_lexical"
    LOWER_LEXICAL = "lower_lexical"


_IDX: list[list[int]] = []


def index_table(n: int) -> list[list[int]]:
    """Table with ``t[u][v] == pair_index(u, v)`` for ``1 <= u != v <= n``."""
    global _IDX
    if len(_IDX) <= n:
        size = max(n + 1, 2 * len(_IDX))
        _IDX = [[pair_index(u, v) if u != v and u and v else -1 for v in range(size)] for u in range(size)]
    return _IDX


@dataclass(frozen=True)
class CliqueWitness:
    """A vertex set together with a certificate for one pattern kind.

    ``color`` is set for monochromatic witnesses. ``ordering`` and ``levels``
    are set for orderable and lexical ones (levels[i] is the color of every
    edge from ordering[i] to a later vertex). Upper and lower lexical
    witnesses carry only ``levels``, read off the natural label order.
    """

    kind: Kind
    vertices: VertexSet
    color: int | None = None
    ordering: tuple[int, ...] | None = None
    levels: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.vertices)

    def verify(self, chi: EdgeColoring) -> bool:
        return verify_witness(chi, self)

    def relabel(self, mapping: Sequence[int], host: EdgeColoring) -> "CliqueWitness":
        """Lift a witness on ``restrict(host, U)`` back to ``host``.

        ``mapping[k-1]`` is the host label of restricted vertex k. Colors are
        re-read from the host since restriction renormalizes them.
        """
        S = tuple(mapping[v - 1] for v in self.vertices)
        k = len(S)
        if self.kind is Kind.MONOCHROMATIC:
            return CliqueWitness(self.kind, S, color=host.color(S[0], S[1]) if k > 1 else self.color)
        if self.kind in (Kind.ORDERABLE, Kind.LEXICAL):
            o = tuple(mapping[v - 1] for v in self.ordering)
            return CliqueWitness(self.kind, S, ordering=o, levels=tuple(host.color(o[i], o[i + 1]) for i in range(k - 1)))
        if self.kind is Kind.LOWER_LEXICAL:
            return CliqueWitness(self.kind, S, levels=tuple(host.color(S[i], S[i + 1]) for i in range(k - 1)))
        if self.kind is Kind.UPPER_LEXICAL:
            return CliqueWitness(self.kind, S, levels=tuple(host.color(S[0], S[j]) for j in range(1, k)))
        return CliqueWitness(self.kind, S)


def verify_witness(chi: EdgeColoring, w: CliqueWitness) -> bool:
    """Re-check a certificate literally against the definitions."""
    S = w.vertices
    if len(S) < 1 or len(set(S)) != len(S) or any(not 1 <= v <= chi.n for v in S):
        return False
    if tuple(sorted(S)) != tuple(S):
        return False
    edges = list(combinations(S, 2))
    if w.kind is Kind.MONOCHROMATIC:
        return w.color is not None and all(chi.color(u, v) == w.color for u, v in edges)
    if w.kind is Kind.RAINBOW:
        cs = [chi.color(u, v) for u, v in edges]
        return len(set(cs)) == len(cs)
    if w.kind in (Kind.ORDERABLE, Kind.LEXICAL):
        o, lv = w.ordering, w.levels
        if o is None or lv is None or sorted(o) != list(S) or len(lv) != max(len(S) - 1, 0):
            return False
        for i in range(len(o)):
            for j in range(i + 1, len(o)):
                if chi.color(o[i], o[j]) != lv[i]:
                    return False
        if w.kind is Kind.ORDERABLE:
            return True
        return _iff_holds(chi, [(o[i], o[j], i) for i, j in combinations(range(len(o)), 2)])
    if w.kind in (Kind.LOWER_LEXICAL, Kind.UPPER_LEXICAL):
        if w.levels is None or len(w.levels) != max(len(S) - 1, 0):
            return False
        lower = w.kind is Kind.LOWER_LEXICAL
        keyed = [(S[i], S[j], i if lower else j) for i, j in combinations(range(len(S)), 2)]
        for u, v, key in keyed:
            if chi.color(u, v) != w.levels[key if lower else key - 1]:
                return False
        return _iff_holds(chi, keyed)
    return False


def _iff_holds(chi: EdgeColoring, keyed: list[tuple[int, int, int]]) -> bool:
    """Two edges share a color iff they share a key."""
    for (a, b, k1), (c, d, k2) in combinations(keyed, 2):
        if (chi.color(a, b) == chi.color(c, d)) != (k1 == k2):
            return False
    return True


# -- flat-array predicates ---------------------------------------------------


def _mono_color(cols, idx, S) -> int | None:
    c = cols[idx[S[0]][S[1]]]
    for u, v in combinations(S, 2):
        if cols[idx[u][v]] != c:
            return None
    return c


def _is_rainbow(cols, idx, S) -> bool:
    seen = set()
    for u, v in combinations(S, 2):
        c = cols[idx[u][v]]
        if c in seen:
            return False
        seen.add(c)
    return True


def _uniform_color(cols, idx, v, others) -> int | None:
    row = idx[v]
    c = cols[row[others[0]]]
    for w in others:
        if cols[row[w]] != c:
            return None
    return c


def _orderable_order(cols, idx, S) -> tuple[list[int], list[int]] | None:
    rest = sorted(S)
    order: list[int] = []
    levels: list[int] = []
    while len(rest) > 1:
        for pos, v in enumerate(rest):
            others = rest[:pos] + rest[pos + 1:]
            c = _uniform_color(cols, idx, v, others)
            if c is not None:
                break
        else:
            return None
        order.append(v)
        levels.append(c)
        rest = others
    return order + rest, levels


def _color_absent(cols, idx, c, S) -> bool:
    for u, v in combinations(S, 2):
        if cols[idx[u][v]] == c:
            return False
    return True


def _lexical_order(cols, idx, S, greedy=False) -> tuple[list[int], list[int]] | None:
    rest = sorted(S)
    if len(rest) == 1:
        return rest, []
    for pos, v in enumerate(rest):
        others = rest[:pos] + rest[pos + 1:]
        c = _uniform_color(cols, idx, v, others)
        if c is None or not _color_absent(cols, idx, c, others):
            continue
        sub = _lexical_order(cols, idx, others, greedy)
        if sub is not None:
            return [v] + sub[0], [c] + sub[1]
        if greedy:
            return None
    return None


def _lower_levels(cols, idx, S) -> list[int] | None:
    S = sorted(S)
    levels = []
    for i in range(len(S) - 1):
        c = _uniform_color(cols, idx, S[i], S[i + 1:])
        if c is None:
            return None
        levels.append(c)
    return levels if len(set(levels)) == len(levels) else None


def _upper_levels(cols, idx, S) -> list[int] | None:
    S = sorted(S)
    levels = []
    for j in range(1, len(S)):
        c = _uniform_color(cols, idx, S[j], S[:j])
        if c is None:
            return None
        levels.append(c)
    return levels if len(set(levels)) == len(levels) else None


def _pred_for(kind: Kind) -> Callable:
    return {
        Kind.MONOCHROMATIC: lambda cols, idx, S: _mono_color(cols, idx, S) is not None,
        Kind.RAINBOW: _is_rainbow,
        Kind.ORDERABLE: lambda cols, idx, S: _orderable_order(cols, idx, S) is not None,
        Kind.LEXICAL: lambda cols, idx, S: _lexical_order(cols, idx, S) is not None,
        Kind.LOWER_LEXICAL: lambda cols, idx, S: _lower_levels(cols, idx, S) is not None,
        Kind.UPPER_LEXICAL: lambda cols, idx, S: _upper_levels(cols, idx, S) is not None,
    }[kind]


def _make_witness(cols, idx, kind: Kind, S) -> CliqueWitness | None:
    S = tuple(sorted(S))
    if kind is Kind.MONOCHROMATIC:
        c = _mono_color(cols, idx, S)
        return None if c is None else CliqueWitness(kind, S, color=c)
    if kind is Kind.RAINBOW:
        return CliqueWitness(kind, S) if _is_rainbow(cols, idx, S) else None
    if kind in (Kind.ORDERABLE, Kind.LEXICAL):
        res = (_orderable_order if kind is Kind.ORDERABLE else _lexical_order)(cols, idx, S)
        return None if res is None else CliqueWitness(kind, S, ordering=tuple(res[0]), levels=tuple(res[1]))
    lv = (_lower_levels if kind is Kind.LOWER_LEXICAL else _upper_levels)(cols, idx, S)
    return None if lv is None else CliqueWitness(kind, S, levels=tuple(lv))


# -- set-level public API ----------------------------------------------------


def _checked_set(chi: EdgeColoring, S: Iterable[int], minimum: int = 2) -> VertexSet:
    S = as_vertex_set(chi, S)
    if len(S) < minimum:
        raise ColoringError(f"vertex set must have at least {minimum} members, got {len(S)}")
    return S


def classify_clique(chi: EdgeColoring, S: Iterable[int]) -> dict[Kind, CliqueWitness]:
    """Every pattern kind that holds on S, each with its certificate."""
    S = _checked_set(chi, S)
    idx = index_table(chi.n)
    out = {}
    for kind in Kind:
        w = _make_witness(chi.colors, idx, kind, S)
        if w is not None:
            out[kind] = w
    return out


def is_monochromatic(chi: EdgeColoring, S: Iterable[int]) -> CliqueWitness | None:
    return _make_witness(chi.colors, index_table(chi.n), Kind.MONOCHROMATIC, _checked_set(chi, S))


def is_rainbow(chi: EdgeColoring, S: Iterable[int]) -> CliqueWitness | None:
    return _make_witness(chi.colors, index_table(chi.n), Kind.RAINBOW, _checked_set(chi, S))


def is_orderable(chi: EdgeColoring, S: Iterable[int]) -> CliqueWitness | None:
    """Orderable certificate for S, or ``None``. Truthiness is the verdict."""
    return _make_witness(chi.colors, index_table(chi.n), Kind.ORDERABLE, _checked_set(chi, S))


def is_lexical(chi: EdgeColoring, S: Iterable[int]) -> CliqueWitness | None:
    return _make_witness(chi.colors, index_table(chi.n), Kind.LEXICAL, _checked_set(chi, S))


def is_lexical_greedy(chi: EdgeColoring, S: Iterable[int]) -> bool:
    """Lexical peel without backtracking (kept for comparison against :func:`is_lexical`)."""
    S = _checked_set(chi, S)
    return _lexical_order(chi.colors, index_table(chi.n), S, greedy=True) is not None


def is_lower_lexical(chi: EdgeColoring, S: Iterable[int]) -> CliqueWitness | None:
    return _make_witness(chi.colors, index_table(chi.n), Kind.LOWER_LEXICAL, _checked_set(chi, S))


def is_upper_lexical(chi: EdgeColoring, S: Iterable[int]) -> CliqueWitness | None:
    return _make_witness(chi.colors, index_table(chi.n), Kind.UPPER_LEXICAL, _checked_set(chi, S))


BRUTE_FORCE_CAP = 8


def brute_force_is_orderable(chi: EdgeColoring, S: Iterable[int], end: str = "lower") -> bool:
    """Try every ordering of S against the orderable definition.

    ``end="upper"`` uses the mirrored definition (same color whenever two
    edges share their later endpoint).
    """
    S = _checked_set(chi, S)
    if len(S) > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force is capped at {BRUTE_FORCE_CAP} vertices")
    k = len(S)
    for order in permutations(S):
        ok = True
        for i in range(k):
            for j in range(i + 1, k):
                for l in range(j + 1, k):
                    if end == "lower":
                        same = chi.color(order[i], order[j]) == chi.color(order[i], order[l])
                    else:
                        same = chi.color(order[i], order[l]) == chi.color(order[j], order[l])
                    if not same:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            return True
    return False


def brute_force_is_lexical(chi: EdgeColoring, S: Iterable[int]) -> bool:
    """Try every ordering of S against the lexical 'if and only if' definition."""
    S = _checked_set(chi, S)
    if len(S) > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force is capped at {BRUTE_FORCE_CAP} vertices")
    pos_pairs = list(combinations(range(len(S)), 2))
    # (edge, edge, same lower end) over positions in the ordering
    checks = [(a, b, pos_pairs[a][0] == pos_pairs[b][0]) for a, b in combinations(range(len(pos_pairs)), 2)]
    for order in permutations(S):
        cs = [chi.colors[pair_index(order[i], order[j])] for i, j in pos_pairs]
        for a, b, same_end in checks:
            if (cs[a] == cs[b]) != same_end:
                break
        else:
            return True
    return False


# -- clique search -----------------------------------------------------------


def _mono_extend(cols, idx, chosen, cand, k, c) -> list[int] | None:
    """Extend ``chosen`` by k vertices of ``cand`` (increasing) so all new edges have color c."""
    if k == 0:
        return chosen
    for pos, w in enumerate(cand):
        if len(cand) - pos < k:
            break
        row = idx[w]
        nxt = [x for x in cand[pos + 1:] if cols[row[x]] == c]
        res = _mono_extend(cols, idx, chosen + [w], nxt, k - 1, c)
        if res is not None:
            return res
    return None


def _rainbow_extend(cols, idx, chosen, used, cand, k) -> list[int] | None:
    if k == 0:
        return chosen
    for pos, w in enumerate(cand):
        if len(cand) - pos < k:
            break
        row = idx[w]
        new = [cols[row[x]] for x in chosen]
        if len(set(new)) != len(new) or used.intersection(new):
            continue
        res = _rainbow_extend(cols, idx, chosen + [w], used.union(new), cand[pos + 1:], k - 1)
        if res is not None:
            return res
    return None


def _descend(cols, idx, cand, k, forbid, memo) -> tuple[list[int], list[int]] | None:
    """Orderable (``forbid is None``) or lexical clique of size k inside ``cand``.

    A clique with first vertex v and level color c lies in {v} ∪ N_c(v); for
    lexical cliques c must also stay out of everything chosen later.
    """
    if k == 1:
        return ([cand[0]], []) if cand else None
    key = (tuple(cand), k, forbid)
    if key in memo:
        return None
    for v in cand:
        row = idx[v]
        by_color: dict[int, list[int]] = {}
        for w in cand:
            if w != v:
                by_color.setdefault(cols[row[w]], []).append(w)
        for c in sorted(by_color):
            sub = by_color[c]
            if len(sub) < k - 1 or (forbid is not None and c in forbid):
                continue
            res = _descend(cols, idx, sub, k - 1, None if forbid is None else forbid | {c}, memo)
            if res is not None:
                return [v] + res[0], [c] + res[1]
    memo[key] = True
    return None


def _grow(cols, idx, chosen, cand, k, pred) -> list[int] | None:
    """Extend ``chosen`` from ``cand`` (increasing) keeping the hereditary ``pred`` true."""
    if k == 0:
        return chosen
    for pos, w in enumerate(cand):
        if len(cand) - pos < k:
            break
        nxt = chosen + [w]
        if len(nxt) >= 2 and not pred(cols, idx, sorted(nxt)):
            continue
        res = _grow(cols, idx, nxt, cand[pos + 1:], k - 1, pred)
        if res is not None:
            return res
    return None


def rainbow_vertex_order(chi: EdgeColoring, members: Sequence[int]) -> list[int]:
    """Vertices by descending number of distinct incident colors, ties by label."""
    idx = index_table(chi.n)
    cols = chi.colors
    distinct = {v: len({cols[idx[v][w]] for w in members if w != v}) for v in members}
    return sorted(members, key=lambda v: (-distinct[v], v))


def find_clique(chi: EdgeColoring, kind: Kind | str, k: int, within: Iterable[int] | None = None) -> CliqueWitness | None:
    """Exact search for a clique of the given kind and size; ``None`` proves absence."""
    kind = Kind(kind)
    members = list(chi.vertices) if within is None else list(as_vertex_set(chi, within))
    if not 2 <= k <= chi.n:
        raise ValueError(f"clique size {k} out of range 2..{chi.n}")
    if k > len(members):
        return None
    cols, idx = chi.colors, index_table(chi.n)
    found: list[int] | None = None
    if kind is Kind.MONOCHROMATIC:
        for pos, v in enumerate(members):
            row = idx[v]
            by_color: dict[int, list[int]] = {}
            for w in members[pos + 1:]:
                by_color.setdefault(cols[row[w]], []).append(w)
            for c in sorted(by_color):
                if len(by_color[c]) >= k - 1:
                    found = _mono_extend(cols, idx, [v], by_color[c], k - 1, c)
                    if found is not None:
                        break
            if found is not None:
                break
    elif kind is Kind.RAINBOW:
        found = _rainbow_extend(cols, idx, [], set(), rainbow_vertex_order(chi, members), k)
    elif kind in (Kind.ORDERABLE, Kind.LEXICAL):
        res = _descend(cols, idx, members, k, None if kind is Kind.ORDERABLE else frozenset(), {})
        if res is not None:
            return CliqueWitness(kind, tuple(sorted(res[0])), ordering=tuple(res[0]), levels=tuple(res[1]))
    else:
        found = _grow(cols, idx, [], members, k, _pred_for(kind))
    if found is None:
        return None
    w = _make_witness(cols, idx, kind, found)
    assert w is not None
    return w


_ORDERED_KINDS = (Kind.MONOCHROMATIC, Kind.RAINBOW, Kind.LOWER_LEXICAL, Kind.UPPER_LEXICAL)


def _ordered_alive(cols, idx, S, alive) -> tuple[Kind, ...]:
    return tuple(kd for kd in alive if _pred_for(kd)(cols, idx, S))


def _colex_subsets(cols, idx, chosen, top, k, alive):
    # chosen is built from the largest element down, so subsets come out in colex order
    if k == 0:
        return chosen, alive
    for w in range(k, top + 1):
        nxt = sorted(chosen + [w])
        still = _ordered_alive(cols, idx, nxt, alive) if len(nxt) >= 2 else alive
        if not still:
            continue
        res = _colex_subsets(cols, idx, chosen + [w], w - 1, k - 1, still)
        if res is not None:
            return res
    return None


def find_ordered_canonical(chi: EdgeColoring, t: int) -> CliqueWitness | None:
    """A t-set that is monochromatic, rainbow, lower or upper lexical in label order."""
    if not 2 <= t <= chi.n:
        raise ValueError(f"clique size {t} out of range 2..{chi.n}")
    cols, idx = chi.colors, index_table(chi.n)
    res = _colex_subsets(cols, idx, [], chi.n, t, _ORDERED_KINDS)
    if res is None:
        return None
    S, alive = res
    return _make_witness(cols, idx, alive[0], S)


# -- anchored checks used by the search engine -------------------------------


def anchored_violation(cols, idx, a: int, b: int, kind: Kind | str, k: int) -> bool:
    """Is there a k-clique of this kind containing a < b inside ``{1..a} ∪ {b}``?

    Only edges among those vertices are read, which in colex edge order are
    exactly the ones assigned before edge (a, b).
    """
    if k == 2:
        return True
    if k - 2 > a - 1:
        return False
    if kind == "ordered_canonical":
        alive = _ordered_alive(cols, idx, [a, b], _ORDERED_KINDS)
        return _anchored_ordered(cols, idx, [a, b], list(range(1, a)), k - 2, alive)
    kind = Kind(kind)
    ra, rb = idx[a], idx[b]
    if kind is Kind.MONOCHROMATIC:
        c = cols[ra[b]]
        cand = [w for w in range(1, a) if cols[ra[w]] == c and cols[rb[w]] == c]
        return len(cand) >= k - 2 and _mono_extend(cols, idx, [], cand, k - 2, c) is not None
    if kind is Kind.RAINBOW:
        return _rainbow_extend(cols, idx, [a, b], {cols[ra[b]]}, list(range(1, a)), k - 2) is not None
    pred = _pred_for(kind)
    return _grow(cols, idx, [a, b], list(range(1, a)), k - 2, pred) is not None


def _anchored_ordered(cols, idx, chosen, cand, k, alive) -> bool:
    if k == 0:
        return True
    for pos, w in enumerate(cand):
        if len(cand) - pos < k:
            break
        nxt = sorted(chosen + [w])
        still = _ordered_alive(cols, idx, nxt, alive)
        if still and _anchored_ordered(cols, idx, nxt, cand[pos + 1:], k - 1, still):
            return True
    return False
