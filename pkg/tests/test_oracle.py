"""Exhaustive references: full enumeration must agree with first principles."""

import itertools

import pytest

from gedkit.graphs import PAD, LabelTable, editorial_cost, pad_pair
from gedkit.oracle import (
    OracleLimitError,
    brute_force_extension_min,
    brute_force_ged,
)
from helpers import G, padded_pairs, small_pairs


def test_identical_graphs():
    t = LabelTable()
    a = G("ABC", [(0, 1, "x"), (1, 2, "y")], t)
    b = G("ABC", [(0, 1, "x"), (1, 2, "y")], t, tag=1)
    assert brute_force_ged(a, b) == 0


def test_single_relabel():
    t = LabelTable()
    a = G("AA", [(0, 1, "a")], t)
    b = G("AB", [(0, 1, "a")], t, tag=1)
    assert brute_force_ged(a, b) == 1


def test_triangle_vs_path():
    t = LabelTable()
    tri = G("AAA", [(0, 1, "a"), (1, 2, "a"), (0, 2, "a")], t)
    pth = G("AAA", [(0, 1, "a"), (1, 2, "a")], t, tag=1)
    assert brute_force_ged(tri, pth) == 1


def test_symmetry():
    for a, b in small_pairs(20, max_padded=6):
        assert brute_force_ged(a, b) == brute_force_ged(b, a)


def test_unequal_sizes_are_padded():
    t = LabelTable()
    a = G("", table=t)
    b = G("AB", [(0, 1, "x")], t, tag=1)
    # two vertex relabels from padding plus one edge insertion
    assert brute_force_ged(a, b) == 3


def test_refuses_large_instances():
    t = LabelTable()
    a = G("A" * 9, table=t)
    b = G("A" * 9, table=t, tag=1)
    with pytest.raises(OracleLimitError):
        brute_force_ged(a, b)
    t2 = LabelTable()
    c = G("A" * 5, table=t2)
    d = G("A" * 5, table=t2, tag=1)
    with pytest.raises(OracleLimitError):
        brute_force_ged(c, d, max_vertices=4)


def test_extension_min_requires_padded_inputs():
    t = LabelTable()
    a, b = G("A", table=t), G("AB", table=t, tag=1)
    with pytest.raises(ValueError):
        brute_force_extension_min(a, b, [])


def test_extension_min_empty_prefix_equals_distance():
    for q, g, _sw in padded_pairs(12, max_padded=6):
        assert brute_force_extension_min(q, g, []) == brute_force_ged(q, g)


def test_extension_min_full_prefix_equals_editorial_cost():
    import random

    rng = random.Random(21)
    for q, g, _sw in padded_pairs(12, max_padded=6):
        fwd = list(range(q.n))
        rng.shuffle(fwd)
        pairs = list(enumerate(fwd))
        assert brute_force_extension_min(q, g, pairs) == editorial_cost(q, g, fwd)


def test_extension_min_monotone_in_the_prefix():
    import random

    rng = random.Random(22)
    for q, g, _sw in padded_pairs(12, max_padded=6):
        n = q.n
        fwd = list(range(n))
        rng.shuffle(fwd)
        pairs = list(enumerate(fwd))
        values = [
            brute_force_extension_min(q, g, pairs[:k]) for k in range(n + 1)
        ]
        for shorter, longer in zip(values, values[1:]):
            assert shorter <= longer


def _injection_cost(small, big, inj):
    """Edit cost of mapping `small` into `big` along the injection `inj`.

    Unmatched big-side vertices are vertex insertions; their edges and
    every big edge without a pre-image are edge insertions.  This never
    touches the padding machinery, so it cross-checks it.
    """
    cost = sum(small.labels[v] != big.labels[inj[v]] for v in range(small.n))
    cost += big.n - small.n
    inv = {u: v for v, u in enumerate(inj)}
    for a, b, lbl in small.edges():
        if big.edge_label(inj[a], inj[b]) != lbl:
            cost += 1
    for x, y, _lbl in big.edges():
        v, w = inv.get(x), inv.get(y)
        if v is None or w is None or small.edge_label(v, w) == PAD:
            cost += 1
    return cost


def test_padding_matches_injection_enumeration():
    cases = [
        ("", [], "AB", [(0, 1, "x")]),
        ("A", [], "BAB", [(0, 1, "x"), (1, 2, "y")]),
        ("AB", [(0, 1, "x")], "ABAB", [(0, 1, "x"), (2, 3, "y"), (1, 2, "x")]),
        ("AAA", [(0, 1, "a"), (1, 2, "a")], "AAAB", [(0, 1, "a"), (0, 2, "a"), (0, 3, "b")]),
    ]
    for vl_a, e_a, vl_b, e_b in cases:
        t = LabelTable()
        small = G(vl_a, e_a, t)
        big = G(vl_b, e_b, t, tag=1)
        best = min(
            _injection_cost(small, big, inj)
            for inj in itertools.permutations(range(big.n), small.n)
        )
        assert brute_force_ged(small, big) == best
        assert brute_force_ged(big, small) == best
