"""Reader and writer for the ``crg 1`` witness text format.

::

    crg 1
    n 4
    # optional metadata comments
    1 2 0
    1 3 0
    ...

Edges are listed one per line in colex order with ``u < v``.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable

from .core import EdgeColoring, colex_pairs, normalize_colors

log = logging.getLogger(__name__)


class CrgFormatError(ValueError):
    pass


def dumps(chi: EdgeColoring, comments: Iterable[str] = ()) -> str:
    lines = ["crg 1", f"n {chi.n}"]
    lines += [f"# {c}" if c else "#" for c in comments]
    colors, _ = normalize_colors(chi.colors)
    lines += [f"{u} {v} {c}" for (u, v), c in zip(colex_pairs(chi.n), colors)]
    return "\n".join(lines) + "\n"


def loads(text: str) -> tuple[EdgeColoring, list[str]]:
    """Parse crg text; returns the coloring and its metadata comments."""
    comments: list[str] = []
    body: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped.startswith("#"):
            comments.append(stripped[1:].strip())
        elif stripped:
            body.append((lineno, stripped))
    if not body or body[0][1].split() != ["crg", "1"]:
        raise CrgFormatError("line 1: expected header 'crg 1'")
    if len(body) < 2:
        raise CrgFormatError("missing 'n <N>' line")
    lineno, nline = body[1]
    parts = nline.split()
    if len(parts) != 2 or parts[0] != "n" or not parts[1].isdigit() or int(parts[1]) < 1:
        raise CrgFormatError(f"line {lineno}: expected 'n <N>' with N >= 1, got {nline!r}")
    n = int(parts[1])
    expected = colex_pairs(n)
    edges = body[2:]
    if len(edges) != len(expected):
        raise CrgFormatError(f"expected {len(expected)} edge lines for n={n}, got {len(edges)}")
    raw = []
    for (lineno, line), (eu, ev) in zip(edges, expected):
        parts = line.split()
        try:
            u, v, c = (int(p) for p in parts)
        except ValueError:
            raise CrgFormatError(f"line {lineno}: expected '<u> <v> <color>', got {line!r}") from None
        if (u, v) != (eu, ev):
            raise CrgFormatError(f"line {lineno}: expected pair {eu} {ev} (colex order), got {u} {v}")
        if c < 0:
            raise CrgFormatError(f"line {lineno}: negative color {c}")
        raw.append(c)
    colors, _ = normalize_colors(raw)
    if list(colors) != raw:
        log.warning("input colors were not normalized; renormalized on load")
    return EdgeColoring(n, colors), comments


def read(path: str | Path) -> tuple[EdgeColoring, list[str]]:
    return loads(Path(path).read_text())


def write(path: str | Path, chi: EdgeColoring, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(dumps(chi, comments))
