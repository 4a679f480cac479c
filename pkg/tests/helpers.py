"""Shared builders and samplers for the test suite."""

from __future__ import annotations

import random

from gedkit.datagen import make_pair
from gedkit.graphs import Graph, LabelTable, pad_pair


def G(vlabels, edges=(), table=None, tag=0) -> Graph:
    """Graph from label tokens; vlabels may be a string of one-char labels."""
    return Graph.from_tokens(list(vlabels), edges, table, tag=tag)


def example_pair():
    """Five-vertex pair plus a two-pair partial mapping, hand-checked.

    The graphs share vertex label A and edge label a but disagree on two
    vertex labels and on the edge layout, so every bound family has work
    to do and the families give different values.
    """
    t = LabelTable()
    q = G("AAABC", [(2, 3, "a"), (1, 2, "a"), (0, 4, "b")], t)
    g = G("AAAAE", [(2, 3, "a"), (3, 4, "a"), (1, 2, "a")], t, tag=1)
    return q, g, [(0, 0), (1, 1)]


def small_pairs(count, max_padded=7, start_seed=0, sizes=(3, 4, 5, 6), xs=(0, 1, 2, 3)):
    """Seeded (a, b) pairs whose padded size stays within the oracle limit.

    Vertex inserts can grow a perturbed graph past n, so candidates are
    filtered on the actual padded vertex count instead of trusting n + x.
    """
    out = []
    seed = start_seed
    while len(out) < count:
        n = sizes[seed % len(sizes)]
        x = xs[(seed // len(sizes)) % len(xs)]
        a, b = make_pair(n, x, seed)
        seed += 1
        if max(a.n, b.n) <= max_padded:
            out.append((a, b))
    return out


def padded_pairs(count, **kw):
    return [pad_pair(a, b) for a, b in small_pairs(count, **kw)]


def random_partial(rng: random.Random, n: int, level=None):
    """Arbitrary injective partial mapping over padded graphs of size n."""
    if level is None:
        level = rng.randrange(0, n + 1)
    return list(zip(rng.sample(range(n), level), rng.sample(range(n), level)))


def random_prefix(rng: random.Random, n: int, max_level=None):
    """Random matching order plus a mapped prefix along it."""
    order = list(range(n))
    rng.shuffle(order)
    hi = n if max_level is None else max_level
    level = rng.randrange(0, hi + 1)
    return order, rng.sample(range(n), level)
