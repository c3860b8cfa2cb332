"""Build blow-up products of engine-found witnesses and check the bundles they avoid.

Optionally files every verified witness into a witness store directory.

    python3 scripts/product_check.py --store witnesses/
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from canonical_ramsey import store
from canonical_ramsey.constructions import product
from canonical_ramsey.search import compute_number, er_query, verify_avoids


@dataclass
class Config:
    r: int = 4
    cap: int = 9
    store: Path | None = None


def main(cfg: Config) -> None:
    base_q = er_query(3, 3, cfg.r)
    base = compute_number(base_q, cfg.cap)
    print(f"ER(3,3,{cfg.r}): {base.status} {base.value}, witness on {base.extremal_witness.n} vertices")
    w = base.extremal_witness
    p = product(w, w)
    target = er_query(3, 4, cfg.r)
    t0 = time.monotonic()
    ok, violation = verify_avoids(p, target)
    print(f"product on {p.n} vertices, {p.color_count} colors: avoids {target.label()} = {ok} "
          f"({time.monotonic() - t0:.2f}s)")
    if not ok:
        print(f"violation: {violation}")
        return
    print(f"so ER(3,4,{cfg.r}) >= {p.n + 1}")
    if cfg.store is not None:
        for chi, q, prov in ((w, base_q, "search"), (p, target, "product")):
            entry = store.add(cfg.store, chi, q, prov)
            print(f"stored {entry.path}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=int, default=Config.r)
    ap.add_argument("--cap", type=int, default=Config.cap)
    ap.add_argument("--store", type=Path)
    a = ap.parse_args()
    main(Config(r=a.r, cap=a.cap, store=a.store))
