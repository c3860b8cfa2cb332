from itertools import combinations, product as cartesian
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from canonical_ramsey.constructions import lexical_coloring, mono_coloring, rainbow_coloring, random_coloring, random_delta_good
from canonical_ramsey.core import EdgeColoring, from_edge_list
from canonical_ramsey.detectors import Kind, find_clique, verify_witness
from canonical_ramsey.proofs import (
    FOUND,
    INCONCLUSIVE,
    UNMET,
    count_structures,
    claim1_extract,
    claim2_extract,
    extract_orderable_or_rainbow,
    heavy_color,
    prune_to_rainbow,
    ramsey2_extract,
    sample_extract_rainbow,
    sample_structure_counts,
)

from conftest import colorings, colorings_with_subset


def pair_oracle(chi, S, special):
    """Count structures straight from the definition, one edge pair at a time."""
    edges = list(combinations(sorted(S), 2))
    x = y = 0
    for e, f in combinations(edges, 2):
        c = chi.color(*e)
        if c == special or c != chi.color(*f):
            continue
        if set(e) & set(f):
            x += 1
        else:
            y += 1
    z = sum(chi.color(*e) == special for e in edges)
    return x, y, z


def test_count_structures_mono_k4():
    k4 = mono_coloring(4)
    c = count_structures(k4, k4.vertices, special=None)
    assert (c.x, c.y, c.z) == (12, 3, 0)
    c = count_structures(k4, k4.vertices, special=0)
    assert (c.x, c.y, c.z) == (0, 0, 6)


def test_count_structures_rainbow_is_zero():
    r = rainbow_coloring(6)
    assert count_structures(r, r.vertices, None).total == 0
    assert count_structures(r, r.vertices, 0).z == 1


@given(colorings_with_subset(max_n=8), st.integers(-1, 3))
def test_count_structures_matches_pair_oracle(pair, special):
    chi, S = pair
    c = count_structures(chi, S, special)
    assert (c.x, c.y, c.z) == pair_oracle(chi, S, special)
    # zero total exactly when the set is rainbow with no special edge
    rainbow = find_clique(chi, Kind.RAINBOW, len(S), within=S) is not None
    no_special = all(chi.color(u, v) != special for u, v in combinations(S, 2))
    assert (c.total == 0) == (rainbow and no_special)


@given(st.integers(20, 40), st.integers(1, 5), st.integers(0, 10_000))
def test_counting_bounds_on_delta_good(N, delta, seed):
    chi = random_delta_good(N, delta, seed)
    c = count_structures(chi, chi.vertices, special=None)
    assert c.x <= N * comb(delta, 2) * (N - 1) / delta
    assert c.y <= comb(N, 2) * (delta * N / 2) / 2


def test_heavy_color():
    chi = from_edge_list(4, [(1, 2, 0), (1, 3, 1), (1, 4, 1), (2, 3, 2), (2, 4, 3), (3, 4, 4)])
    assert heavy_color(chi, chi.vertices) == 1
    assert heavy_color(chi, (1,)) is None


def test_prune_examples():
    k4 = mono_coloring(4)
    out = prune_to_rainbow(k4, k4.vertices, None)
    assert len(out) == 2
    assert prune_to_rainbow(rainbow_coloring(5), range(1, 6), None) == (1, 2, 3, 4, 5)
    assert len(prune_to_rainbow(k4, k4.vertices, 0)) == 1


@given(colorings_with_subset(max_n=9, max_colors=6), st.integers(-1, 5))
def test_prune_guarantees(pair, special):
    chi, T = pair
    out = prune_to_rainbow(chi, T, special)
    assert set(out) <= set(T)
    assert len(out) >= len(T) - count_structures(chi, T, special).total
    assert count_structures(chi, out, special).total == 0


def test_sample_structure_counts_shapes_and_seed():
    chi = random_coloring(20, 6, seed=2)
    a = sample_structure_counts(chi, chi.vertices, 12, 500, special=0, seed=9)
    b = sample_structure_counts(chi, chi.vertices, 12, 500, special=0, seed=9)
    for u, v in zip(a, b):
        assert u.shape == (500,) and np.array_equal(u, v)


def test_sample_counts_agree_with_exact_counts():
    chi = random_coloring(15, 5, seed=3)
    V = list(chi.vertices)
    x, y, z = sample_structure_counts(chi, V, 6, 300, special=1, seed=4)
    # the full set of draws is the whole population when size == |V|
    xs, ys, zs = sample_structure_counts(chi, V, len(V), 3, special=1, seed=4)
    full = count_structures(chi, V, 1)
    assert set(xs) == {full.x} and set(ys) == {full.y} and set(zs) == {full.z}
    assert x.max() <= full.x and y.max() <= full.y and z.max() <= full.z


@given(colorings_with_subset(min_size=3, max_n=9, max_colors=5), st.integers(-1, 4))
def test_vectorized_counts_match_exact_counts(pair, special):
    chi, S = pair
    xs, ys, zs = sample_structure_counts(chi, S, len(S), 2, special, seed=0)
    c = count_structures(chi, S, special)
    assert list(xs) == [c.x] * 2 and list(ys) == [c.y] * 2 and list(zs) == [c.z] * 2


def test_sample_extract_rainbow_examples():
    r = rainbow_coloring(12)
    rep = sample_extract_rainbow(r, r.vertices, 4, seed=1, tries=5)
    assert rep.success and rep.tries_used == 1 and verify_witness(r, rep.witness)
    k = mono_coloring(12)
    rep = sample_extract_rainbow(k, k.vertices, 4, seed=1, tries=5)
    assert not rep.success and rep.tries_used == 5
    with pytest.raises(ValueError):
        sample_extract_rainbow(r, range(1, 11), 4)


def test_sample_extract_is_jobs_independent():
    chi = random_delta_good(40, 2, seed=5)
    a = sample_extract_rainbow(chi, chi.vertices, 4, seed=3, tries=20, jobs=1)
    b = sample_extract_rainbow(chi, chi.vertices, 4, seed=3, tries=20, jobs=2)
    assert (a.success, a.tries_used, a.sample) == (b.success, b.tries_used, b.sample)


def _exact_expectations(chi, V, size, special):
    N, c = len(V), count_structures(chi, V, special)
    frac = lambda k: comb(N - k, size - k) / comb(N, size)  # noqa: E731
    return c.x * frac(3) + c.y * frac(4), c.z * frac(2)


def _planted(N, pairs, specials, seed):
    """Rainbow K_N with ``pairs`` planted same-color edge pairs and ``specials`` edges in one extra color."""
    rng = np.random.default_rng(seed)
    E = comb(N, 2)
    raw = list(range(E))
    picks = rng.permutation(E)[: 2 * pairs + specials].tolist()
    for a, b in zip(picks[:pairs], picks[pairs:2 * pairs]):
        raw[b] = raw[a]
    for e in picks[2 * pairs:]:
        raw[e] = E
    return EdgeColoring.from_flat(N, raw)


def test_sampling_success_rate_meets_markov_bound():
    r, checked = 4, 0
    for seed in range(20):
        chi = _planted(60, pairs=int(40 + 5 * seed), specials=20, seed=seed)
        special = chi.color(*next((u, v) for u, v, c in chi.edges() if c == chi.color_count - 1))
        xy, z = _exact_expectations(chi, chi.vertices, 3 * r, special)
        if xy >= r / 3 or z >= r / 3:
            continue
        checked += 1
        wins = sum(sample_extract_rainbow(chi, chi.vertices, r, special, seed=s, tries=1).success for s in range(60))
        assert wins / 60 >= 1 / 3
    assert checked >= 10


def test_ramsey2_examples():
    pentagon = EdgeColoring.from_flat(5, [0 if (v - u) in (1, 4) else 1 for v in range(2, 6) for u in range(1, v)])
    assert ramsey2_extract(pentagon, pentagon.vertices, 3) is None
    w = ramsey2_extract(mono_coloring(4), range(1, 5), 3)
    assert w.kind is Kind.MONOCHROMATIC and w.size == 3
    with pytest.raises(ValueError):
        ramsey2_extract(rainbow_coloring(4), range(1, 5), 3)
    with pytest.raises(ValueError):
        ramsey2_extract(mono_coloring(4), range(1, 5), 1)


def test_every_two_coloring_of_k6_has_a_mono_triangle():
    for bits in cartesian((0, 1), repeat=15):
        chi = EdgeColoring.from_flat(6, bits)
        assert ramsey2_extract(chi, chi.vertices, 3) is not None


def test_claim1_third_color_gives_lexical(claim1_k4):
    rep = claim1_extract(claim1_k4, u=2, v=1, i=0, j=1, m=3)
    assert rep.outcome == FOUND
    w = rep.witness
    assert w.kind is Kind.LEXICAL and w.ordering == (1, 2, 3, 4) and w.levels == (0, 1, 2)


def test_claim1_two_colored_w_gives_mono():
    chi = from_edge_list(4, [(1, 2, 0), (1, 3, 0), (1, 4, 0), (2, 3, 1), (2, 4, 1), (3, 4, 0)])
    rep = claim1_extract(chi, u=2, v=1, i=0, j=1, m=3)
    assert rep.outcome == FOUND
    assert rep.witness.kind is Kind.MONOCHROMATIC and rep.witness.vertices == (1, 3, 4)


def test_claim1_m4_on_six_vertex_w():
    # v=1, u=2, W = 3..8 with W 2-colored in {0, 1}
    rows = [(1, 2, 0)] + [(1, w, 0) for w in range(3, 9)] + [(2, w, 1) for w in range(3, 9)]
    pent = lambda a, b: 0 if (b - a) % 2 else 1  # noqa: E731
    rows += [(a, b, pent(a, b)) for a, b in combinations(range(3, 9), 2)]
    chi = from_edge_list(8, rows)
    rep = claim1_extract(chi, u=2, v=1, i=0, j=1, m=4)
    assert rep.outcome == FOUND and rep.witness.kind is Kind.MONOCHROMATIC and rep.witness.size == 4


def test_claim1_preconditions(claim1_k4):
    assert claim1_extract(claim1_k4, 2, 1, 0, 0, 3).outcome == UNMET
    assert claim1_extract(claim1_k4, 2, 1, 1, 0, 3).outcome == UNMET
    assert claim1_extract(claim1_k4, 3, 4, 2, 0, 3).outcome == UNMET
    # R(4) is beyond the search engine at desk scale
    rep = claim1_extract(claim1_k4, 2, 1, 0, 1, 5)
    assert rep.outcome == UNMET and "R(4)" in rep.reason


def test_claim2_color_i_edge_gives_mono_k4():
    chi = mono_coloring(4)
    rep = claim2_extract(chi, 1, 2, l=4, r=4)
    assert rep.outcome == FOUND and rep.witness.vertices == (1, 2, 3, 4)


def test_claim2_lexical_lift():
    # u=1, v=2 joined to everything in color 9; V = 3..6 carries a lexical coloring
    lex = lexical_coloring(4)
    rows = [(1, 2, 9)] + [(a, w, 9) for a in (1, 2) for w in range(3, 7)]
    rows += [(a + 2, b + 2, c) for a, b, c in lex.edges()]
    chi = from_edge_list(6, rows)
    rep = claim2_extract(chi, 1, 2, l=5, r=5)
    assert rep.outcome == FOUND and rep.witness.kind is Kind.LEXICAL
    assert rep.witness.ordering[0] == 1 and 1 in rep.witness.vertices and rep.witness.size == 5


def test_claim2_rainbow_v():
    rows = [(1, 2, 50)] + [(a, w, 50) for a in (1, 2) for w in range(3, 8)]
    rows += [(a + 2, b + 2, c) for a, b, c in rainbow_coloring(5).edges()]
    chi = from_edge_list(7, rows)
    rep = claim2_extract(chi, 1, 2, l=4, r=4)
    assert rep.outcome == FOUND and rep.witness.kind is Kind.RAINBOW


def test_claim2_unmet():
    assert claim2_extract(rainbow_coloring(5), 1, 2, 4, 4).outcome == UNMET
    assert claim2_extract(mono_coloring(4), 1, 1, 4, 4).outcome == UNMET


def test_extract_orderable_or_rainbow_examples():
    rep = extract_orderable_or_rainbow(mono_coloring(8), 4, 4)
    assert rep.outcome == FOUND and rep.witness.kind is Kind.ORDERABLE and rep.witness.size == 4
    rep = extract_orderable_or_rainbow(rainbow_coloring(6), 4, 4)
    assert rep.outcome == FOUND and rep.witness.kind is Kind.RAINBOW
    rep = extract_orderable_or_rainbow(lexical_coloring(6), 5, 3, thresholds=[2, 2, 2])
    assert rep.outcome == FOUND and rep.witness.size == 5
    with pytest.raises(ValueError):
        extract_orderable_or_rainbow(mono_coloring(4), 4, 4, thresholds=[1])
    with pytest.raises(ValueError):
        extract_orderable_or_rainbow(mono_coloring(4), 2, 4)


def test_extract_inconclusive_when_thresholds_too_high():
    # 2-colored K5 without mono triangles has neither a heavy color nor a rainbow K3
    pentagon = EdgeColoring.from_flat(5, [0 if (v - u) in (1, 4) else 1 for v in range(2, 6) for u in range(1, v)])
    rep = extract_orderable_or_rainbow(pentagon, 4, 3, thresholds=[10, 10])
    assert rep.outcome == INCONCLUSIVE and rep.witness is None


@given(colorings(min_n=4, max_n=9, max_colors=6), st.integers(3, 5), st.integers(2, 5), st.integers(0, 100))
def test_extraction_witnesses_always_verify(chi, o, r, seed):
    rep = extract_orderable_or_rainbow(chi, o, r, seed=seed, tries=5)
    if rep.outcome == FOUND:
        assert verify_witness(chi, rep.witness)
        assert rep.witness.size in (o, r)
    else:
        assert rep.witness is None
