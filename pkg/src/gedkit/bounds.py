"""Admissible lower bounds for partial vertex mappings.

A partial mapping f anchors a prefix of q's matching order onto distinct
g vertices.  Its bound is the exact editorial cost of the anchored
subgraphs plus an estimate for the remainder: the free vertices, the
edges between free vertices (inner) and the edges between a free and an
anchored vertex (cross).  Every estimate never exceeds the cheapest full
mapping extending f, so all of them prune safely.

Seven bound kinds are supported:

  LS    vertex-label and edge-label multiset edits of the remainder
  LSa   LS with cross edges charged per anchor instead of pooled
  BM    min-cost matching of per-vertex branch structures (label + edges)
  BMa   BM with inner/cross split and per-anchor cross comparison
  BMaN  BMa re-evaluated after committing the child assignment
  SM    min-cost matching of star structures, normalized by degree
  SMa   SM with the inner/cross split of BMa

Matching-based costs are kept in half units (all values doubled) so the
assignment solver works on integers; bounds surface as exact Fractions.
The per-child evaluators compute bounds for every extension f + {v -> u}
of the current state in one pass: the label-set kinds in time linear in
the two graphs, the matching kinds with one Hungarian solve followed by
incremental re-pricing of the pinned row.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .assignment import INFEASIBLE, CostMatrix, resolve_forbidden, solve
from .graphs import (
    PAD,
    Graph,
    induced_mapping_cost,
    intersection_size,
    multiset_edit_distance,
)

LABELSET_KINDS = ("LS", "LSa")
MATCHING_KINDS = ("BM", "BMa", "SM", "SMa")
ALL_KINDS = ("LS", "LSa", "BM", "BMa", "BMaN", "SM", "SMa")

# kinds whose best-extension step yields a full matching usable as an
# upper-bound candidate
UPPER_KINDS = frozenset(MATCHING_KINDS)


class MultisetPair:
    """Two multisets with an incrementally maintained intersection size.

    Side 1 holds q-side labels, side 2 g-side labels.  Every update is
    O(1); distance() is the multiset edit distance of the current pair.
    """

    __slots__ = ("c1", "c2", "n1", "n2", "isec")

    def __init__(self) -> None:
        self.c1: dict[int, int] = {}
        self.c2: dict[int, int] = {}
        self.n1 = 0
        self.n2 = 0
        self.isec = 0

    def add1(self, label: int) -> None:
        c = self.c1.get(label, 0)
        if c < self.c2.get(label, 0):
            self.isec += 1
        self.c1[label] = c + 1
        self.n1 += 1

    def remove1(self, label: int) -> None:
        c = self.c1[label]
        if c <= self.c2.get(label, 0):
            self.isec -= 1
        if c == 1:
            del self.c1[label]
        else:
            self.c1[label] = c - 1
        self.n1 -= 1

    def add2(self, label: int) -> None:
        c = self.c2.get(label, 0)
        if c < self.c1.get(label, 0):
            self.isec += 1
        self.c2[label] = c + 1
        self.n2 += 1

    def remove2(self, label: int) -> None:
        c = self.c2[label]
        if c <= self.c1.get(label, 0):
            self.isec -= 1
        if c == 1:
            del self.c2[label]
        else:
            self.c2[label] = c - 1
        self.n2 -= 1

    def distance(self) -> int:
        return max(self.n1, self.n2) - self.isec

    def snapshot(self) -> tuple:
        return (dict(self.c1), dict(self.c2), self.n1, self.n2, self.isec)


class _Anchor:
    """Cross-edge label multisets of one anchored pair (v, u)."""

    __slots__ = ("v", "u", "pair")

    def __init__(self, v: int, u: int):
        self.v = v
        self.u = u
        self.pair = MultisetPair()


class LabelsetProfile:
    """Label multisets of the remainder, maintained under push and pop.

    vert tracks free-vertex labels, alledge every remainder edge label
    (inner and cross pooled), inner only the free-free edge labels, and
    anchors the per-anchor cross-edge labels.  extend/retract cost O(d)
    dictionary updates for the two touched vertices.
    """

    __slots__ = ("q", "g", "vert", "alledge", "inner", "anchors")

    def __init__(self, q: Graph, g: Graph):
        self.q = q
        self.g = g
        self.vert = MultisetPair()
        self.alledge = MultisetPair()
        self.inner = MultisetPair()
        self.anchors: list[_Anchor] = []
        for lbl in q.labels:
            self.vert.add1(lbl)
        for lbl in g.labels:
            self.vert.add2(lbl)
        for _u, _w, lbl in q.edges():
            self.alledge.add1(lbl)
            self.inner.add1(lbl)
        for _u, _w, lbl in g.edges():
            self.alledge.add2(lbl)
            self.inner.add2(lbl)

    @classmethod
    def build(cls, q: Graph, g: Graph, pairs: Sequence[tuple[int, int]]) -> "LabelsetProfile":
        prof = cls(q, g)
        pos_q = [-1] * q.n
        pos_g = [-1] * g.n
        for i, (v, u) in enumerate(pairs):
            prof.extend(v, u, pos_q, pos_g)
            pos_q[v] = i
            pos_g[u] = i
        return prof

    def extend(self, v: int, u: int, pos_q: Sequence[int], pos_g: Sequence[int]) -> None:
        """Anchor (v, u); position arrays must still show both as free."""
        self.vert.remove1(self.q.labels[v])
        self.vert.remove2(self.g.labels[u])
        fresh = _Anchor(v, u)
        for w, lbl in self.q.adj[v]:
            p = pos_q[w]
            if p >= 0:
                self.alledge.remove1(lbl)
                self.anchors[p].pair.remove1(lbl)
            else:
                self.inner.remove1(lbl)
                fresh.pair.add1(lbl)
        for w, lbl in self.g.adj[u]:
            p = pos_g[w]
            if p >= 0:
                self.alledge.remove2(lbl)
                self.anchors[p].pair.remove2(lbl)
            else:
                self.inner.remove2(lbl)
                fresh.pair.add2(lbl)
        self.anchors.append(fresh)

    def retract(self, v: int, u: int, pos_q: Sequence[int], pos_g: Sequence[int]) -> None:
        """Undo the matching extend; position arrays already show v, u free."""
        ent = self.anchors.pop()
        if ent.v != v or ent.u != u:
            raise AssertionError("retract does not match the last extend")
        self.vert.add1(self.q.labels[v])
        self.vert.add2(self.g.labels[u])
        for w, lbl in self.q.adj[v]:
            p = pos_q[w]
            if p >= 0:
                self.alledge.add1(lbl)
                self.anchors[p].pair.add1(lbl)
            else:
                self.inner.add1(lbl)
        for w, lbl in self.g.adj[u]:
            p = pos_g[w]
            if p >= 0:
                self.alledge.add2(lbl)
                self.anchors[p].pair.add2(lbl)
            else:
                self.inner.add2(lbl)


class SearchContext:
    """Mutable mapping state shared by the bound evaluators.

    Tracks the assignment stack along the matching order, the anchored
    editorial cost (updated incrementally), and, for the label-set
    kinds, the remainder profile.
    """

    __slots__ = (
        "q",
        "g",
        "order",
        "kind",
        "n",
        "assigned",
        "used",
        "pos_q",
        "pos_g",
        "anchored_cost",
        "_deltas",
        "profile",
    )

    def __init__(self, q: Graph, g: Graph, order: Sequence[int], kind: str):
        if q.n != g.n:
            raise ValueError("context requires padded graphs")
        if kind not in ALL_KINDS:
            raise ValueError(f"unknown bound kind {kind!r}")
        if sorted(order) != list(range(q.n)):
            raise ValueError("order must be a permutation of q's vertices")
        self.q = q
        self.g = g
        self.order = tuple(order)
        self.kind = kind
        self.n = q.n
        self.assigned: list[int] = []
        self.used = [False] * g.n
        self.pos_q = [-1] * q.n
        self.pos_g = [-1] * g.n
        self.anchored_cost = 0
        self._deltas: list[int] = []
        self.profile = LabelsetProfile(q, g) if kind in LABELSET_KINDS else None

    @property
    def level(self) -> int:
        return len(self.assigned)

    @property
    def next_vertex(self) -> int:
        return self.order[len(self.assigned)]

    def pairs(self) -> list[tuple[int, int]]:
        return [(self.order[i], u) for i, u in enumerate(self.assigned)]

    def free_g(self) -> list[int]:
        return [u for u in range(self.n) if not self.used[u]]

    def push(self, u: int) -> None:
        v = self.order[len(self.assigned)]
        if self.used[u]:
            raise ValueError(f"g vertex {u} already mapped")
        d = anchored_cost_delta(self, v, u)
        if self.profile is not None:
            self.profile.extend(v, u, self.pos_q, self.pos_g)
        lvl = len(self.assigned)
        self.pos_q[v] = lvl
        self.pos_g[u] = lvl
        self.used[u] = True
        self.assigned.append(u)
        self._deltas.append(d)
        self.anchored_cost += d

    def pop(self) -> None:
        u = self.assigned.pop()
        v = self.order[len(self.assigned)]
        self.anchored_cost -= self._deltas.pop()
        self.pos_q[v] = -1
        self.pos_g[u] = -1
        self.used[u] = False
        if self.profile is not None:
            self.profile.retract(v, u, self.pos_q, self.pos_g)

    def morph_to(self, target: Sequence[int]) -> None:
        """Re-point the context at another root path of assignments."""
        k = 0
        limit = min(len(target), len(self.assigned))
        while k < limit and self.assigned[k] == target[k]:
            k += 1
        while len(self.assigned) > k:
            self.pop()
        for u in target[k:]:
            self.push(u)


def anchored_cost_delta(ctx: SearchContext, v: int, u: int) -> int:
    """Editorial cost added by anchoring v -> u on top of the current state.

    Counts the label disagreement of (v, u) plus the edits among edges
    between the new pair and already anchored vertices.  O(d(v) + d(u)).
    """
    q, g = ctx.q, ctx.g
    pos_q, pos_g = ctx.pos_q, ctx.pos_g
    d1 = 0
    for w, _lbl in q.adj[v]:
        if pos_q[w] >= 0:
            d1 += 1
    d2 = c1 = c2 = 0
    order = ctx.order
    for w, lg in g.adj[u]:
        p = pos_g[w]
        if p >= 0:
            d2 += 1
            lq = q.edge_label(v, order[p])
            if lq == lg:
                c2 += 1
            elif lq != PAD:
                c1 += 1
    return d1 + d2 - 2 * c2 - c1 + (1 if q.labels[v] != g.labels[u] else 0)


@dataclass
class ChildBounds:
    """Result of pricing every candidate child of the current state."""

    vertex: int | None  # best candidate, lowest id among minima
    bound: Fraction | None
    bounds: dict[int, Fraction]
    upper_assignment: list[tuple[int, int]] | None = None  # completes f to a full mapping


# ---------------------------------------------------------------------------
# label-set kinds: all children in O(size(q) + size(g))

def children_bounds_labelset(ctx: SearchContext, candidates: Iterable[int]) -> ChildBounds:
    """Bounds of f + {v_i -> u} for every candidate u under LS or LSa.

    Works on the remainder profile of the current state: q-side counters
    are staged once for v_i, g-side counters are borrowed and restored
    per candidate, so one call touches each edge a constant number of
    times.
    """
    cand = sorted(candidates)
    if not cand:
        raise ValueError("no candidates to price")
    if ctx.kind == "LS":
        raw = _children_ls(ctx, cand)
    elif ctx.kind == "LSa":
        raw = _children_lsa(ctx, cand)
    else:
        raise ValueError(f"label-set pricing does not handle kind {ctx.kind!r}")
    best_u = min(cand, key=lambda u: (raw[u], u))
    bounds = {u: Fraction(b) for u, b in raw.items()}
    return ChildBounds(best_u, bounds[best_u], bounds)


def _children_ls(ctx: SearchContext, cand: list[int]) -> dict[int, int]:
    q, g = ctx.q, ctx.g
    prof = ctx.profile
    vert, edge = prof.vert, prof.alledge
    v = ctx.next_vertex
    lv = q.labels[v]
    base = ctx.anchored_cost
    pos_q, pos_g = ctx.pos_q, ctx.pos_g
    order = ctx.order

    vert.remove1(lv)
    staged: list[int] = []
    d1 = 0
    for w, lbl in q.adj[v]:
        if pos_q[w] >= 0:
            d1 += 1
            edge.remove1(lbl)
            staged.append(lbl)
    out: dict[int, int] = {}
    for u in cand:
        lu = g.labels[u]
        vert.remove2(lu)
        d2 = c1 = c2 = 0
        removed: list[int] = []
        for w, lg in g.adj[u]:
            p = pos_g[w]
            if p >= 0:
                d2 += 1
                lq = q.edge_label(v, order[p])
                if lq == lg:
                    c2 += 1
                elif lq != PAD:
                    c1 += 1
                edge.remove2(lg)
                removed.append(lg)
        delta = d1 + d2 - 2 * c2 - c1 + (1 if lv != lu else 0)
        out[u] = base + delta + vert.distance() + edge.distance()
        for lg in removed:
            edge.add2(lg)
        vert.add2(lu)
    for lbl in staged:
        edge.add1(lbl)
    vert.add1(lv)
    return out


def _children_lsa(ctx: SearchContext, cand: list[int]) -> dict[int, int]:
    q, g = ctx.q, ctx.g
    prof = ctx.profile
    vert, inner, anchors = prof.vert, prof.inner, prof.anchors
    v = ctx.next_vertex
    lv = q.labels[v]
    base = ctx.anchored_cost
    pos_q, pos_g = ctx.pos_q, ctx.pos_g
    order = ctx.order

    vert.remove1(lv)
    staged_anchor: list[tuple[int, int]] = []
    staged_inner: list[int] = []
    vi_free: dict[int, int] = {}
    vi_free_n = 0
    d1 = 0
    for w, lbl in q.adj[v]:
        p = pos_q[w]
        if p >= 0:
            d1 += 1
            anchors[p].pair.remove1(lbl)
            staged_anchor.append((p, lbl))
        else:
            inner.remove1(lbl)
            staged_inner.append(lbl)
            vi_free[lbl] = vi_free.get(lbl, 0) + 1
            vi_free_n += 1
    base_dist = [a.pair.distance() for a in anchors]
    s_base = sum(base_dist)

    out: dict[int, int] = {}
    for u in cand:
        lu = g.labels[u]
        vert.remove2(lu)
        d2 = c1 = c2 = 0
        touched: list[tuple[int, int]] = []
        removed_inner: list[int] = []
        u_free: dict[int, int] = {}
        u_free_n = 0
        for w, lg in g.adj[u]:
            p = pos_g[w]
            if p >= 0:
                d2 += 1
                lq = q.edge_label(v, order[p])
                if lq == lg:
                    c2 += 1
                elif lq != PAD:
                    c1 += 1
                anchors[p].pair.remove2(lg)
                touched.append((p, lg))
            else:
                inner.remove2(lg)
                removed_inner.append(lg)
                u_free[lg] = u_free.get(lg, 0) + 1
                u_free_n += 1
        s_cur = s_base
        for p, _lg in touched:
            s_cur += anchors[p].pair.distance() - base_dist[p]
        fresh = max(vi_free_n, u_free_n) - intersection_size(vi_free, u_free)
        delta = d1 + d2 - 2 * c2 - c1 + (1 if lv != lu else 0)
        out[u] = base + delta + vert.distance() + inner.distance() + s_cur + fresh
        for p, lg in touched:
            anchors[p].pair.add2(lg)
        for lg in removed_inner:
            inner.add2(lg)
        vert.add2(lu)
    for p, lbl in staged_anchor:
        anchors[p].pair.add1(lbl)
    for lbl in staged_inner:
        inner.add1(lbl)
    vert.add1(lv)
    return out


# ---------------------------------------------------------------------------
# matching kinds: one solve plus incremental re-pricing

def _vertex_views(q: Graph, pos: Sequence[int], free: list[int], kind: str):
    """Per-free-vertex structures feeding the pair costs for one side."""
    alledge = {}
    inner = {}
    anch = {}
    nbr = {}
    for v in free:
        if kind in ("BM", "SM"):
            c: dict[int, int] = {}
            for _w, lbl in q.adj[v]:
                c[lbl] = c.get(lbl, 0) + 1
            alledge[v] = (c, len(q.adj[v]))
        else:
            ci: dict[int, int] = {}
            ti = 0
            ca: dict[int, int] = {}
            for w, lbl in q.adj[v]:
                p = pos[w]
                if p >= 0:
                    ca[p] = lbl
                else:
                    ci[lbl] = ci.get(lbl, 0) + 1
                    ti += 1
            inner[v] = (ci, ti)
            anch[v] = ca
        if kind in ("SM", "SMa"):
            cn: dict[int, int] = {}
            tn = 0
            for w, _lbl in q.adj[v]:
                if pos[w] < 0:
                    cn[q.labels[w]] = cn.get(q.labels[w], 0) + 1
                    tn += 1
            nbr[v] = (cn, tn)
    return alledge, inner, anch, nbr


def _ups(a: tuple[dict, int], b: tuple[dict, int]) -> int:
    return max(a[1], b[1]) - intersection_size(a[0], b[0])


def _anchored_mismatch(a: dict[int, int], b: dict[int, int]) -> int:
    """Anchored positions where the two cross-edge labels disagree."""
    if len(b) < len(a):
        a, b = b, a
    common_eq = common = 0
    for p, lbl in a.items():
        other = b.get(p)
        if other is not None:
            common += 1
            if other == lbl:
                common_eq += 1
    return len(a) + len(b) - common - common_eq


def build_cost_matrix(
    q: Graph, g: Graph, pos_q: Sequence[int], pos_g: Sequence[int], kind: str
) -> tuple[list[list], list[int], list[int]]:
    """Half-unit cost matrix over free(q) x free(g) for a matching kind."""
    if kind not in MATCHING_KINDS:
        raise ValueError(f"no cost matrix for kind {kind!r}")
    free_q = [v for v in range(q.n) if pos_q[v] < 0]
    free_g = [u for u in range(g.n) if pos_g[u] < 0]
    aq, iq, anq, nq = _vertex_views(q, pos_q, free_q, kind)
    ag, ig, ang, ng = _vertex_views(g, pos_g, free_g, kind)
    ql, gl = q.labels, g.labels
    rows = []
    for v in free_q:
        row = []
        for u in free_g:
            c = 2 if ql[v] != gl[u] else 0
            if kind in ("BM", "SM"):
                c += _ups(aq[v], ag[u])
            else:
                c += _ups(iq[v], ig[u]) + 2 * _anchored_mismatch(anq[v], ang[u])
            if kind in ("SM", "SMa"):
                c += 2 * _ups(nq[v], ng[u])
            row.append(c)
        rows.append(row)
    return rows, free_q, free_g


def lambda_cost(
    q: Graph,
    g: Graph,
    pairs: Sequence[tuple[int, int]],
    v: int,
    u: int,
    kind: str,
) -> Fraction:
    """Pair cost of matching free v to free u under a matching kind."""
    pos_q, pos_g = _positions(q, g, pairs)
    rows, free_q, free_g = build_cost_matrix(q, g, pos_q, pos_g, kind)
    return Fraction(rows[free_q.index(v)][free_g.index(u)], 2)


def _star_divisor(q: Graph, g: Graph, free_q: list[int], free_g: list[int]) -> int:
    dq = max((q.degree(v) for v in free_q), default=0)
    dg = max((g.degree(u) for u in free_g), default=0)
    return max(4, dq + 1, dg + 1)


def _children_matching(ctx: SearchContext, candidates: Iterable[int], kind: str) -> ChildBounds:
    q, g = ctx.q, ctx.g
    cand = set(candidates)
    if not cand:
        raise ValueError("no candidates to price")
    rows, free_q, free_g = build_cost_matrix(q, g, ctx.pos_q, ctx.pos_g, kind)
    vi = ctx.next_vertex
    r = free_q.index(vi)
    for ci, u in enumerate(free_g):
        if u not in cand:
            rows[r][ci] = INFEASIBLE
    matrix = CostMatrix(rows)
    state = solve(matrix)
    if not state.feasible:
        raise AssertionError("pinned matching must stay feasible")
    if kind in ("SM", "SMa"):
        denom = 2 * _star_divisor(q, g, free_q, free_g)
    else:
        denom = 2
    base = ctx.anchored_cost
    bounds: dict[int, Fraction] = {}
    matchings: dict[int, list[int]] = {}
    for col, total, rm in resolve_forbidden(state, matrix, r, with_matching=True):
        u = free_g[col]
        bounds[u] = Fraction(denom * base + total, denom)
        matchings[u] = rm
    if set(bounds) != cand:
        raise AssertionError("re-pricing must reach every candidate exactly once")
    best_u = min(cand, key=lambda u: (bounds[u], u))
    rm = matchings[best_u]
    upper = [(free_q[i], free_g[rm[i]]) for i in range(len(free_q))]
    return ChildBounds(best_u, bounds[best_u], bounds, upper)


def children_bounds_assignment(ctx: SearchContext, candidates: Iterable[int]) -> ChildBounds:
    """BM/BMa bounds for every candidate child via one solve + re-pricing."""
    if ctx.kind not in ("BM", "BMa"):
        raise ValueError(f"assignment pricing does not handle kind {ctx.kind!r}")
    return _children_matching(ctx, candidates, ctx.kind)


def children_bounds_star(ctx: SearchContext, candidates: Iterable[int]) -> ChildBounds:
    """SM/SMa bounds: the matching total divided by the degree normalizer."""
    if ctx.kind not in ("SM", "SMa"):
        raise ValueError(f"star pricing does not handle kind {ctx.kind!r}")
    return _children_matching(ctx, candidates, ctx.kind)


def child_bound_bman(ctx: SearchContext, u: int) -> Fraction:
    """BMa bound re-evaluated with the child assignment committed.

    The candidate pair joins the anchored part before the matrix is
    built, which dominates the pinned-row bound at the cost of a fresh
    solve per child.
    """
    ctx.push(u)
    try:
        rows, free_q, _free_g = build_cost_matrix(ctx.q, ctx.g, ctx.pos_q, ctx.pos_g, "BMa")
        if free_q:
            state = solve(CostMatrix(rows))
            if not state.feasible:
                raise AssertionError("unrestricted matching must be feasible")
            half = state.total_cost
        else:
            half = 0
        return Fraction(2 * ctx.anchored_cost + half, 2)
    finally:
        ctx.pop()


def _children_bman(ctx: SearchContext, candidates: Iterable[int]) -> ChildBounds:
    cand = sorted(candidates)
    if not cand:
        raise ValueError("no candidates to price")
    bounds = {u: child_bound_bman(ctx, u) for u in cand}
    best_u = min(cand, key=lambda u: (bounds[u], u))
    return ChildBounds(best_u, bounds[best_u], bounds)


def best_extension(ctx: SearchContext, candidates: Iterable[int]) -> ChildBounds:
    """Price every candidate child of the current state under ctx.kind."""
    kind = ctx.kind
    if kind in LABELSET_KINDS:
        return children_bounds_labelset(ctx, candidates)
    if kind in ("BM", "BMa"):
        return children_bounds_assignment(ctx, candidates)
    if kind in ("SM", "SMa"):
        return children_bounds_star(ctx, candidates)
    return _children_bman(ctx, candidates)


def heuristic_full_mapping(
    n: int,
    pairs: Sequence[tuple[int, int]],
    extension: Sequence[tuple[int, int]],
) -> list[int]:
    """Assemble the forward array of f extended by a free-vertex matching."""
    forward = [-1] * n
    for v, u in pairs:
        forward[v] = u
    for v, u in extension:
        forward[v] = u
    if -1 in forward:
        raise ValueError("extension does not complete the mapping")
    return forward


# ---------------------------------------------------------------------------
# direct evaluators: slow, obvious, used as references and for node bounds

def _positions(q: Graph, g: Graph, pairs: Sequence[tuple[int, int]]):
    pos_q = [-1] * q.n
    pos_g = [-1] * g.n
    for i, (v, u) in enumerate(pairs):
        if pos_q[v] >= 0 or pos_g[u] >= 0:
            raise ValueError("partial mapping must be injective")
        pos_q[v] = i
        pos_g[u] = i
    return pos_q, pos_g


def _remainder_labelset(q: Graph, g: Graph, pairs, split_cross: bool) -> int:
    pos_q, pos_g = _positions(q, g, pairs)
    lv_q = Counter(q.labels[v] for v in range(q.n) if pos_q[v] < 0)
    lv_g = Counter(g.labels[u] for u in range(g.n) if pos_g[u] < 0)
    total = multiset_edit_distance(lv_q, lv_g)
    if not split_cross:
        le_q = Counter(l for a, b, l in q.edges() if pos_q[a] < 0 or pos_q[b] < 0)
        le_g = Counter(l for a, b, l in g.edges() if pos_g[a] < 0 or pos_g[b] < 0)
        return total + multiset_edit_distance(le_q, le_g)
    in_q = Counter(l for a, b, l in q.edges() if pos_q[a] < 0 and pos_q[b] < 0)
    in_g = Counter(l for a, b, l in g.edges() if pos_g[a] < 0 and pos_g[b] < 0)
    total += multiset_edit_distance(in_q, in_g)
    for v, u in pairs:
        cq = Counter(l for w, l in q.adj[v] if pos_q[w] < 0)
        cg = Counter(l for w, l in g.adj[u] if pos_g[w] < 0)
        total += multiset_edit_distance(cq, cg)
    return total


def remainder_bound(kind: str, q: Graph, g: Graph, pairs: Sequence[tuple[int, int]]) -> Fraction:
    """Lower bound on completing `pairs`, ignoring the anchored cost."""
    if kind == "LS":
        return Fraction(_remainder_labelset(q, g, pairs, split_cross=False))
    if kind == "LSa":
        return Fraction(_remainder_labelset(q, g, pairs, split_cross=True))
    if kind == "BMaN":
        kind = "BMa"
    if kind not in MATCHING_KINDS:
        raise ValueError(f"unknown bound kind {kind!r}")
    pos_q, pos_g = _positions(q, g, pairs)
    rows, free_q, free_g = build_cost_matrix(q, g, pos_q, pos_g, kind)
    if not free_q:
        return Fraction(0)
    state = solve(CostMatrix(rows))
    if not state.feasible:
        raise AssertionError("unrestricted matching must be feasible")
    if kind in ("SM", "SMa"):
        return Fraction(state.total_cost, 2 * _star_divisor(q, g, free_q, free_g))
    return Fraction(state.total_cost, 2)


def node_bound(kind: str, q: Graph, g: Graph, pairs: Sequence[tuple[int, int]]) -> Fraction:
    """Anchored editorial cost plus the remainder bound of `pairs`."""
    return induced_mapping_cost(q, g, pairs) + remainder_bound(kind, q, g, pairs)


def child_bound(
    kind: str, q: Graph, g: Graph, pairs: Sequence[tuple[int, int]], v: int, u: int
) -> Fraction:
    """Reference per-child bound, recomputed from scratch.

    For the label-set kinds and BMaN the child is committed and the node
    bound of the extended mapping is returned.  For the matching kinds
    the candidate stays free but its row is pinned to the candidate
    column before the solve.
    """
    if kind in LABELSET_KINDS or kind == "BMaN":
        return node_bound(kind, q, g, list(pairs) + [(v, u)])
    if kind not in MATCHING_KINDS:
        raise ValueError(f"unknown bound kind {kind!r}")
    pos_q, pos_g = _positions(q, g, pairs)
    rows, free_q, free_g = build_cost_matrix(q, g, pos_q, pos_g, kind)
    r = free_q.index(v)
    ci = free_g.index(u)
    for j in range(len(free_g)):
        if j != ci:
            rows[r][j] = INFEASIBLE
    state = solve(CostMatrix(rows))
    if not state.feasible:
        raise AssertionError("pinned matching must stay feasible")
    base = induced_mapping_cost(q, g, pairs)
    if kind in ("SM", "SMa"):
        d = _star_divisor(q, g, free_q, free_g)
        return base + Fraction(state.total_cost, 2 * d)
    return base + Fraction(state.total_cost, 2)
