"""A directory of verified witness colorings.

Each entry is a crg file whose metadata comments record the avoided query,
where the coloring came from, and when it was last verified.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from pathlib import Path

from . import crg
from .core import EdgeColoring
from .search import PatternQuery, verify_avoids

_KEYS = {
    "mono": "forbid_mono",
    "lexical": "forbid_lexical",
    "rainbow": "forbid_rainbow",
    "orderable": "forbid_orderable",
    "ordered": "forbid_ordered_canonical",
    "colors": "max_colors",
}


def parse_query_label(label: str) -> PatternQuery:
    """Inverse of :meth:`PatternQuery.label`."""
    kwargs = {}
    for part in label.split(","):
        key, _, val = part.partition("=")
        if key not in _KEYS or not val.isdigit():
            raise ValueError(f"bad query term {part!r}")
        kwargs[_KEYS[key]] = int(val)
    return PatternQuery(**kwargs)


@dataclass
class WitnessStoreEntry:
    path: Path
    coloring: EdgeColoring
    query: PatternQuery | None
    provenance: str
    verified_at: str
    stale: bool = False


def _meta(comments: list[str]) -> dict[str, str]:
    out = {}
    for c in comments:
        key, _, val = c.partition(" ")
        out[key] = val.strip()
    return out


def add(store: Path, chi: EdgeColoring, query: PatternQuery, provenance: str, name: str | None = None) -> WitnessStoreEntry:
    ok, violation = verify_avoids(chi, query)
    if not ok:
        raise ValueError(f"coloring does not avoid {query.label()}: {violation}")
    store.mkdir(parents=True, exist_ok=True)
    name = name or f"{query.label().replace(',', '_').replace('=', '')}_n{chi.n}"
    path = store / f"{name}.crg"
    stamp = dt.datetime.now(dt.timezone.utc).replace(microsecond=0).isoformat()
    crg.write(path, chi, [f"query {query.label()}", f"provenance {provenance}", f"verified {stamp}"])
    return WitnessStoreEntry(path, chi, query, provenance, stamp)


def load(path: Path) -> WitnessStoreEntry:
    """Read an entry and re-verify it; failures mark the entry stale."""
    chi, comments = crg.read(path)
    meta = _meta(comments)
    try:
        query = parse_query_label(meta["query"])
    except (KeyError, ValueError):
        return WitnessStoreEntry(path, chi, None, meta.get("provenance", ""), meta.get("verified", ""), stale=True)
    ok, _ = verify_avoids(chi, query)
    return WitnessStoreEntry(path, chi, query, meta.get("provenance", ""), meta.get("verified", ""), stale=not ok)


def entries(store: Path) -> list[WitnessStoreEntry]:
    return [load(p) for p in sorted(store.glob("*.crg"))]
