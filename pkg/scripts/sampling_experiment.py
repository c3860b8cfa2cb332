"""Compare sampled structure counts of 3r-subsets with their exact expectations.

Instances are random delta-good colorings of K_N with one extra special
color sprinkled on a fraction of the edges.

    python3 scripts/sampling_experiment.py --instances 20 --samples 10000
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
from math import comb

import numpy as np

from canonical_ramsey.constructions import random_delta_good
from canonical_ramsey.core import EdgeColoring
from canonical_ramsey.proofs import count_structures, sample_extract_rainbow, sample_structure_counts


@dataclass
class Config:
    instances: int = 20
    samples: int = 10_000
    r: int = 4
    n_range: tuple[int, int] = (20, 60)
    delta: int = 3
    special_fraction: float = 0.05
    seed: int = 0


def make_instance(cfg: Config, k: int) -> tuple[EdgeColoring, int | None]:
    rng = np.random.default_rng([cfg.seed, k])
    N = int(rng.integers(cfg.n_range[0], cfg.n_range[1] + 1))
    chi = random_delta_good(N, cfg.delta, seed=int(rng.integers(2**31)))
    raw = list(chi.colors)
    mark = chi.color_count
    for e in np.flatnonzero(rng.random(len(raw)) < cfg.special_fraction).tolist():
        raw[e] = mark
    chi = EdgeColoring.from_flat(N, raw)
    return chi, (chi.colors[raw.index(mark)] if mark in raw else None)


def main(cfg: Config) -> None:
    size = 3 * cfg.r
    print(f"{'N':>4}{'E[X] exact':>12}{'mean X':>10}{'E[Y] exact':>12}{'mean Y':>10}"
          f"{'E[Z] exact':>12}{'mean Z':>10}{'success':>9}")
    for k in range(cfg.instances):
        chi, special = make_instance(cfg, k)
        N = chi.n
        full = count_structures(chi, chi.vertices, special)
        frac = lambda j: comb(N - j, size - j) / comb(N, size)  # noqa: E731
        xs, ys, zs = sample_structure_counts(chi, chi.vertices, size, cfg.samples, special, seed=k)
        rep = sample_extract_rainbow(chi, chi.vertices, cfg.r, special, seed=k, tries=20)
        print(f"{N:>4}{full.x * frac(3):>12.3f}{xs.mean():>10.3f}{full.y * frac(4):>12.3f}{ys.mean():>10.3f}"
              f"{full.z * frac(2):>12.3f}{zs.mean():>10.3f}{('yes' if rep.success else 'no'):>9}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--instances", type=int, default=Config.instances)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--r", type=int, default=Config.r)
    ap.add_argument("--delta", type=int, default=Config.delta)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    main(Config(instances=a.instances, samples=a.samples, r=a.r, delta=a.delta, seed=a.seed))
