"""Tabulate small ER(m, l, r) and CR(o, r) values with the exact search engine.

    python3 scripts/small_values.py --cap 9 --time-budget 30
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from canonical_ramsey.search import compute_number, cr_query, er_query


@dataclass
class Config:
    cap: int = 9
    node_budget: int | None = None
    time_budget: float | None = 30.0
    jobs: int = 1
    er_triples: list[tuple[int, int, int]] = field(
        default_factory=lambda: [(3, 3, 3), (3, 3, 4), (3, 4, 3), (4, 3, 3), (3, 4, 4), (3, 5, 3)]
    )
    cr_pairs: list[tuple[int, int]] = field(default_factory=lambda: [(3, 3), (3, 4), (4, 3)])


def main(cfg: Config) -> None:
    fmt = lambda xs: ",".join(map(str, xs))  # noqa: E731
    rows = [(f"ER({fmt(t)})", er_query(*t)) for t in cfg.er_triples]
    rows += [(f"CR({fmt(p)})", cr_query(*p)) for p in cfg.cr_pairs]
    print(f"{'number':<14}{'status':<18}{'value':>6}{'nodes':>12}{'seconds':>10}")
    for name, q in rows:
        out = compute_number(q, cfg.cap, cfg.node_budget, cfg.time_budget, cfg.jobs)
        shown = str(out.value) if out.status == "exact" else f">={out.value}"
        print(f"{name:<14}{out.status:<18}{shown:>6}{out.nodes_explored:>12}{out.wall_time:>10.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cap", type=int, default=Config.cap)
    ap.add_argument("--node-budget", type=int)
    ap.add_argument("--time-budget", type=float, default=Config.time_budget)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    a = ap.parse_args()
    main(Config(cap=a.cap, node_budget=a.node_budget, time_budget=a.time_budget, jobs=a.jobs))
