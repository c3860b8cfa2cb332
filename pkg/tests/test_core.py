from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from canonical_ramsey.constructions import lexical_coloring, mono_coloring, product, rainbow_coloring
from canonical_ramsey.core import (
    ColoringError,
    EdgeColoring,
    color_degree,
    colex_pairs,
    edges_in_color,
    from_edge_list,
    is_delta_good,
    neighborhood_in_color,
    pair_index,
    recolor,
    restrict,
)
from canonical_ramsey.detectors import classify_clique

from conftest import colorings


def test_pair_index_is_colex_position():
    assert [pair_index(u, v) for u, v in colex_pairs(6)] == list(range(15))
    assert pair_index(3, 1) == pair_index(1, 3) == 1


def test_from_edge_list_examples():
    chi = from_edge_list(2, [(1, 2, 7)])
    assert chi.colors == (0,) and chi.color_count == 1
    chi = from_edge_list(3, [(1, 2, 5), (1, 3, 5), (2, 3, 9)])
    assert chi.colors == (0, 0, 1) and chi.color_count == 2


def test_from_edge_list_accepts_any_order_and_orientation():
    chi = from_edge_list(3, [(3, 2, 4), (2, 1, 4), (3, 1, 8)])
    assert chi.colors == (0, 1, 0)


@pytest.mark.parametrize(
    "n, entries, msg",
    [
        (3, [(1, 2, 1), (1, 3, 2)], "missing pair {2,3}"),
        (2, [(1, 2, 1), (2, 1, 3)], "duplicate pair {1,2}"),
        (2, [(1, 3, 0)], "pair {1,3} out of range"),
        (2, [(1, 1, 0)], "pair {1,1}"),
    ],
)
def test_from_edge_list_rejections(n, entries, msg):
    with pytest.raises(ColoringError, match=msg.replace("{", r"\{").replace("}", r"\}")):
        from_edge_list(n, entries)


def test_color_degree_examples():
    k4 = mono_coloring(4)
    assert color_degree(k4, 1, 0) == 3
    assert color_degree(k4, 1, 1) == 0
    assert color_degree(lexical_coloring(4), 1, 0) == 3


def test_neighborhood_examples():
    r3 = rainbow_coloring(3)
    assert neighborhood_in_color(r3, 1, r3.color(1, 2)) == (2,)
    assert neighborhood_in_color(mono_coloring(3), 2, 0) == (1, 3)
    assert neighborhood_in_color(mono_coloring(3), 2, 5) == ()


def test_edges_in_color_examples():
    assert edges_in_color(mono_coloring(4), (1, 2, 3), 0) == 3
    r4 = rainbow_coloring(4)
    for U in combinations(r4.vertices, 3):
        for c in range(r4.color_count):
            assert edges_in_color(r4, U, c) <= 1
    assert edges_in_color(lexical_coloring(4), (2, 3, 4), 1) == 2


def test_is_delta_good_examples():
    assert is_delta_good(rainbow_coloring(6), 1) == (True, None)
    ok, (v, c) = is_delta_good(mono_coloring(4), 2)
    assert not ok and c == 0 and color_degree(mono_coloring(4), v, c) == 3
    n = 6
    ok, (v, c) = is_delta_good(lexical_coloring(n), n - 2)
    assert not ok and (v, c) == (1, 0)


def test_restrict_examples():
    chi = lexical_coloring(5)
    sub, mapping = restrict(chi, chi.vertices)
    assert sub == chi and mapping == (1, 2, 3, 4, 5)
    sub, _ = restrict(mono_coloring(5), (1, 3, 5))
    assert sub == mono_coloring(3)
    inner = lexical_coloring(3)
    p = product(rainbow_coloring(3), inner)
    for block in range(3):
        sub, _ = restrict(p, range(3 * block + 1, 3 * block + 4))
        assert sub == inner
    with pytest.raises(ColoringError):
        restrict(chi, ())


def test_restrict_keeps_order():
    chi = lexical_coloring(6)
    sub, mapping = restrict(chi, (2, 4, 5))
    assert mapping == (2, 4, 5)
    assert sub.color(1, 2) == sub.color(1, 3) != sub.color(2, 3)


def test_single_vertex_coloring():
    chi = EdgeColoring(1, ())
    assert chi.color_count == 0 and list(chi.edges()) == []


@given(colorings())
def test_normalization_idempotent(chi):
    assert from_edge_list(chi.n, chi.edges()) == chi
    assert chi.is_normalized()


@given(colorings(), st.randoms(use_true_random=False))
def test_color_renaming_roundtrip(chi, rnd):
    used = sorted(set(chi.colors))
    targets = rnd.sample(range(100, 1000), len(used))
    renamed = from_edge_list(chi.n, recolor(chi, dict(zip(used, targets))))
    assert renamed == chi


@given(colorings(min_n=3), colorings(min_n=3))
def test_equal_normal_forms_iff_renaming(a, b):
    if a.n != b.n:
        return
    # a renaming exists iff the edge-wise color pairing is a bijection
    pairing = set(zip(a.colors, b.colors))
    is_renaming = len(pairing) == len({x for x, _ in pairing}) == len({y for _, y in pairing})
    assert (a == b) == is_renaming


@given(colorings())
def test_degree_count_consistency(chi):
    for c in range(chi.color_count):
        assert sum(color_degree(chi, v, c) for v in chi.vertices) == 2 * edges_in_color(chi, chi.vertices, c)


@given(colorings(min_n=3), st.data())
def test_heredity_of_patterns(chi, data):
    U = data.draw(st.lists(st.sampled_from(list(chi.vertices)), min_size=2, unique=True))
    sub, mapping = restrict(chi, U)
    for kind, w in classify_clique(sub, sub.vertices).items():
        lifted = w.relabel(mapping, chi)
        assert lifted.verify(chi)
        assert kind in classify_clique(chi, lifted.vertices)
