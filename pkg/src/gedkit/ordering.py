"""Vertex matching order for the mapping search.

Vertices of q are ordered greedily by label infrequency measured against
g: a label seen often in g contributes little weight, a label g lacks
contributes weight 1.  The first pick maximizes its own weight plus the
weight of all its incident edges; every later pick maximizes its weight
plus the weight of edges into the already ordered prefix, restricted to
vertices adjacent to the prefix whenever any exist.  When no remaining
vertex touches the prefix (disconnected q), the first-pick rule restarts.
Padding vertices always come last.  All weights are exact rationals and
ties resolve to the lowest vertex id.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .graphs import PAD, Graph


def compute_order(q: Graph, g: Graph) -> list[int]:
    """Return the vertices of q, padding last, in mapping order."""
    n = q.n
    vcnt = Counter(g.labels)
    ecnt = Counter(lbl for _u, _w, lbl in g.edges())
    vtot = g.n
    etot = g.edge_count

    def w_vertex(v: int) -> Fraction:
        if vtot == 0:
            return Fraction(1)
        return Fraction(vtot - vcnt.get(q.labels[v], 0), vtot)

    def w_edge(lbl: int) -> Fraction:
        if etot == 0:
            return Fraction(1)
        return Fraction(etot - ecnt.get(lbl, 0), etot)

    def full_score(v: int) -> Fraction:
        return w_vertex(v) + sum((w_edge(lbl) for _w, lbl in q.adj[v]), Fraction(0))

    real = [v for v in range(n) if q.labels[v] != PAD]
    pads = [v for v in range(n) if q.labels[v] == PAD]
    remaining = set(real)
    order: list[int] = []
    in_prefix = [False] * n

    while remaining:
        touching = [v for v in sorted(remaining) if any(in_prefix[w] for w, _l in q.adj[v])]
        if order and touching:
            best, best_score = None, None
            for v in touching:
                s = w_vertex(v) + sum(
                    (w_edge(lbl) for w, lbl in q.adj[v] if in_prefix[w]), Fraction(0)
                )
                if best_score is None or s > best_score:
                    best, best_score = v, s
        else:
            best, best_score = None, None
            for v in sorted(remaining):
                s = full_score(v)
                if best_score is None or s > best_score:
                    best, best_score = v, s
        order.append(best)
        in_prefix[best] = True
        remaining.discard(best)

    order.extend(pads)
    return order
