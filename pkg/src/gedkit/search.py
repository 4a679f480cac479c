"""Exact distance search over partial vertex mappings.

Two frontier strategies drive one extension engine.  Best-first pops the
open node with the smallest stored bound (ties: deeper level first, then
insertion order).  Depth-first keeps at most one open node per level, so
its frontier never exceeds |V(q)| entries, and pops the deepest one.

Extending a node creates at most two nodes: the best child of its own
partial mapping and its next sibling under its parent.  Siblings are
generated lazily in bound order.  With expand_all the bounds priced for
a whole family are kept on the first child and later siblings are read
off that list; without it each sibling re-prices the remaining
candidates.  Both variants see identical bounds and therefore extend
identical node sets.

Stored bounds are clamped to be non-decreasing along tree paths, and a
node is pruned once ceil(bound) reaches the incumbent: editorial costs
are integral, so a fractional bound rules out everything below its
ceiling.  Full mappings arise two ways: one level above the leaves the
unique completion is evaluated exactly, and for the matching bound kinds
the assignment priced during child generation is itself a completion,
evaluated once per extension.  Verification pins the incumbent to
tau + 1 and stops at the first completion of cost at most tau.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import ALL_KINDS, SearchContext, best_extension, heuristic_full_mapping
from .graphs import PAD, Graph, editorial_cost, pad_pair
from .ordering import compute_order

STRATEGIES = ("astar", "dfs")
ORDERS = ("auto", "identity")

# deterministic memory accounting, charged per live node and frontier entry
NODE_BYTES = 160
ENTRY_BYTES = 64


@dataclass(frozen=True)
class SearchConfig:
    strategy: str = "astar"
    bound: str = "BMa"
    expand_all: bool = True
    order: str = "auto"
    time_limit: float = 3600.0
    memory_limit: int = 16 * 2**30

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.bound not in ALL_KINDS:
            raise ValueError(f"unknown bound kind {self.bound!r}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown order policy {self.order!r}")
        if self.time_limit < 0:
            raise ValueError("time_limit must be non-negative")
        if self.memory_limit <= 0:
            raise ValueError("memory_limit must be positive")


@dataclass
class SearchStats:
    pushed: int = 0
    popped: int = 0
    extensions: int = 0
    pruned: int = 0
    leaves: int = 0
    upper_bound_updates: int = 0
    swept: int = 0
    peak_live_nodes: int = 0
    peak_frontier: int = 0
    peak_memory_bytes: int = 0
    elapsed_ms: float = 0.0
    pop_bound_monotone: bool = True
    max_extended_bound: Optional[Fraction] = None


@dataclass
class SearchResult:
    status: str  # ok | timeout | out_of_memory
    mode: str  # compute | verify
    distance: Optional[int]
    verified: Optional[bool]
    witness: Optional[list[int]]  # forward array over the padded pair
    witness_cost: Optional[int]
    lower: Fraction
    upper: Optional[int]
    swapped: bool
    order: tuple[int, ...]
    stats: SearchStats
    q: Graph = field(repr=False)
    g: Graph = field(repr=False)
    tau: Optional[int] = None

    def witness_pairs(self) -> Optional[list[tuple[Optional[int], Optional[int]]]]:
        """Witness as (first-argument id, second-argument id) pairs.

        Padding vertices appear as None on their side.
        """
        if self.witness is None:
            return None
        out = []
        for vi, ui in enumerate(self.witness):
            qa = self.q.orig_ids[vi] if self.q.labels[vi] != PAD else None
            gb = self.g.orig_ids[ui] if self.g.labels[ui] != PAD else None
            out.append((gb, qa) if self.swapped else (qa, gb))
        return out


class _Node:
    __slots__ = (
        "mapped",
        "level",
        "stored",
        "parent",
        "prev_sibling",
        "sib_entries",
        "sib_next",
        "rc",
        "seq",
        "mem",
    )

    def __init__(self):
        self.mapped = None
        self.level = 0
        self.stored = Fraction(0)
        self.parent = None
        self.prev_sibling = None
        self.sib_entries = None  # shared (raw bound, vertex) list, sorted
        self.sib_next = 0
        self.rc = 0
        self.seq = 0
        self.mem = 0


class _AstarFrontier:
    def __init__(self):
        self.heap = []

    def __len__(self):
        return len(self.heap)

    def push(self, node: _Node) -> None:
        heapq.heappush(self.heap, (node.stored, -node.level, node.seq, node))

    def pop(self) -> _Node:
        return heapq.heappop(self.heap)[3]

    def min_bound(self):
        return self.heap[0][0] if self.heap else None

    def sweep(self, incumbent) -> list[_Node]:
        """Drop entries that can no longer beat the incumbent.

        Runs only when more than half the heap is dead, so the scan cost
        amortizes against the pops it saves.
        """
        dead = [e for e in self.heap if math.ceil(e[0]) >= incumbent]
        if 2 * len(dead) <= len(self.heap):
            return []
        live = [e for e in self.heap if math.ceil(e[0]) < incumbent]
        heapq.heapify(live)
        self.heap = live
        return [e[3] for e in dead]


class _DfsFrontier:
    """One slot per level; pop returns the deepest occupied slot."""

    def __init__(self, n: int):
        self.slots: list[Optional[_Node]] = [None] * max(n, 1)
        self.count = 0
        self.top = -1

    def __len__(self):
        return self.count

    def push(self, node: _Node) -> None:
        if self.slots[node.level] is not None:
            raise AssertionError("level slot already occupied")
        self.slots[node.level] = node
        self.count += 1
        if node.level > self.top:
            self.top = node.level

    def pop(self) -> _Node:
        i = self.top
        while self.slots[i] is None:
            i -= 1
        node = self.slots[i]
        self.slots[i] = None
        self.count -= 1
        self.top = i
        return node

    def min_bound(self):
        bounds = [nd.stored for nd in self.slots if nd is not None]
        return min(bounds) if bounds else None

    def sweep(self, incumbent) -> list[_Node]:
        return []


class _Engine:
    def __init__(self, q, g, order, config: SearchConfig, mode: str, tau, swapped: bool):
        self.q = q
        self.g = g
        self.n = q.n
        self.order = tuple(order)
        self.config = config
        self.mode = mode
        self.tau = tau
        self.swapped = swapped
        self.ctx = SearchContext(q, g, order, config.bound)
        self.incumbent = math.inf if mode == "compute" else tau + 1
        self.best_forward: Optional[list[int]] = None
        self.best_cost: Optional[int] = None
        self.finished = False  # verify mode found a witness
        self.stats = SearchStats()
        if config.strategy == "astar":
            self.frontier = _AstarFrontier()
        else:
            self.frontier = _DfsFrontier(self.n)
        self.seq = 0
        self.live_nodes = 0
        self.mem_used = 0
        self._last_pop = None

    # -- bookkeeping -------------------------------------------------

    def _make_node(self, mapped, level, stored, parent, prev_sibling=None,
                   sib_entries=None, sib_next=0) -> _Node:
        node = _Node()
        node.mapped = mapped
        node.level = level
        node.stored = stored
        node.parent = parent
        node.prev_sibling = prev_sibling
        node.sib_entries = sib_entries
        node.sib_next = sib_next
        node.rc = 1  # the frontier reference
        node.seq = self.seq
        self.seq += 1
        share = len(sib_entries) - sib_next if sib_entries else 0
        node.mem = NODE_BYTES + share * ENTRY_BYTES
        if parent is not None:
            parent.rc += 1
        if prev_sibling is not None:
            prev_sibling.rc += 1
        self.live_nodes += 1
        self.mem_used += node.mem
        if self.live_nodes > self.stats.peak_live_nodes:
            self.stats.peak_live_nodes = self.live_nodes
        if self.mem_used > self.stats.peak_memory_bytes:
            self.stats.peak_memory_bytes = self.mem_used
        return node

    def _push(self, node: _Node) -> None:
        self.frontier.push(node)
        self.mem_used += ENTRY_BYTES
        self.stats.pushed += 1
        if len(self.frontier) > self.stats.peak_frontier:
            self.stats.peak_frontier = len(self.frontier)
        if self.mem_used > self.stats.peak_memory_bytes:
            self.stats.peak_memory_bytes = self.mem_used

    def _decref(self, node: _Node) -> None:
        node.rc -= 1
        if node.rc == 0:
            self._release(node)

    def _release(self, node: _Node) -> None:
        stack = [node]
        while stack:
            nd = stack.pop()
            self.live_nodes -= 1
            self.mem_used -= nd.mem
            for ref in (nd.parent, nd.prev_sibling):
                if ref is not None:
                    ref.rc -= 1
                    if ref.rc == 0:
                        stack.append(ref)
            nd.parent = None
            nd.prev_sibling = None

    @staticmethod
    def _path(node: Optional[_Node]) -> list[int]:
        out = []
        while node is not None and node.mapped is not None:
            out.append(node.mapped)
            node = node.parent
        out.reverse()
        return out

    # -- incumbent ---------------------------------------------------

    def _offer_mapping(self, forward: list[int], cost: int) -> None:
        if self.mode == "verify":
            if cost <= self.tau:
                self.best_forward = list(forward)
                self.best_cost = cost
                self.finished = True
            return
        if cost < self.incumbent:
            self.incumbent = cost
            self.best_forward = list(forward)
            self.best_cost = cost
            self.stats.upper_bound_updates += 1
            removed = self.frontier.sweep(self.incumbent)
            if removed:
                self.mem_used -= ENTRY_BYTES * len(removed)
                self.stats.swept += len(removed)
                for nd in removed:
                    self._decref(nd)

    # -- extension ---------------------------------------------------

    def _extend(self, node: _Node) -> None:
        ctx = self.ctx
        if node.parent is None:
            ctx.morph_to([])
        else:
            ctx.morph_to(self._path(node.parent))
            self._gen_sibling(node)
            ctx.push(node.mapped)
        if node.level + 1 == self.n:
            self._leaf_family()
        else:
            self._gen_children(node)

    def _gen_sibling(self, node: _Node) -> None:
        parent = node.parent
        if self.config.expand_all:
            entries = node.sib_entries
            j = node.sib_next
            if not entries or j >= len(entries):
                return
            raw, u = entries[j]
            stored = raw if raw > parent.stored else parent.stored
            if math.ceil(stored) >= self.incumbent:
                return  # sorted family: every later sibling is dead too
            sib = self._make_node(u, node.level, stored, parent,
                                  sib_entries=entries, sib_next=j + 1)
            self._push(sib)
            return
        emitted = set()
        walk = node
        while walk is not None:
            emitted.add(walk.mapped)
            walk = walk.prev_sibling
        cand = [u for u in self.ctx.free_g() if u not in emitted]
        if not cand:
            return
        cb = best_extension(self.ctx, cand)
        stored = cb.bound if cb.bound > parent.stored else parent.stored
        if math.ceil(stored) >= self.incumbent:
            return
        sib = self._make_node(cb.vertex, node.level, stored, parent, prev_sibling=node)
        self._push(sib)

    def _leaf_family(self) -> None:
        ctx = self.ctx
        n = self.n
        for u in ctx.free_g():
            ctx.push(u)
            cost = ctx.anchored_cost
            forward = [-1] * n
            for v, w in ctx.pairs():
                forward[v] = w
            ctx.pop()
            self.stats.leaves += 1
            self._offer_mapping(forward, cost)
            if self.finished:
                return

    def _gen_children(self, node: _Node) -> None:
        ctx = self.ctx
        cb = best_extension(ctx, ctx.free_g())
        if cb.upper_assignment is not None:
            forward = heuristic_full_mapping(self.n, ctx.pairs(), cb.upper_assignment)
            self._offer_mapping(forward, editorial_cost(self.q, self.g, forward))
            if self.finished:
                return
        stored = cb.bound if cb.bound > node.stored else node.stored
        if math.ceil(stored) >= self.incumbent:
            return  # best child is dead, so the whole family is
        entries = None
        if self.config.expand_all:
            entries = []
            for u, raw in cb.bounds.items():
                if u == cb.vertex:
                    continue
                clamped = raw if raw > node.stored else node.stored
                if math.ceil(clamped) < self.incumbent:
                    entries.append((raw, u))
            entries.sort()
        child = self._make_node(cb.vertex, node.level + 1, stored, node,
                                sib_entries=entries, sib_next=0)
        self._push(child)

    # -- main loop ---------------------------------------------------

    def run(self) -> SearchResult:
        t0 = time.monotonic()
        deadline = t0 + self.config.time_limit
        root = self._make_node(None, 0, Fraction(0), None)
        self._push(root)
        status = "ok"
        astar = self.config.strategy == "astar"
        while len(self.frontier) > 0:
            if time.monotonic() >= deadline:
                status = "timeout"
                break
            if self.mem_used > self.config.memory_limit:
                status = "out_of_memory"
                break
            node = self.frontier.pop()
            self.mem_used -= ENTRY_BYTES
            self.stats.popped += 1
            if astar:
                if self._last_pop is not None and node.stored < self._last_pop:
                    self.stats.pop_bound_monotone = False
                self._last_pop = node.stored
            if math.ceil(node.stored) >= self.incumbent:
                self.stats.pruned += 1
                self._decref(node)
                continue
            self.stats.extensions += 1
            if (self.stats.max_extended_bound is None
                    or node.stored > self.stats.max_extended_bound):
                self.stats.max_extended_bound = node.stored
            self._extend(node)
            self._decref(node)
            if self.finished:
                break
        self.stats.elapsed_ms = (time.monotonic() - t0) * 1000.0
        return self._result(status)

    def _result(self, status: str) -> SearchResult:
        distance = None
        verified = None
        upper = int(self.incumbent) if self.incumbent != math.inf else None
        if self.mode == "compute":
            if status == "ok":
                distance = int(self.incumbent)
                lower = Fraction(distance)
            else:
                lower = self.frontier.min_bound()
                if lower is None:
                    lower = Fraction(0)
                if upper is not None and Fraction(upper) < lower:
                    lower = Fraction(upper)
        else:
            upper = self.best_cost
            if self.finished:
                verified = True
                lower = Fraction(0)
            elif status == "ok":
                verified = False
                lower = Fraction(self.tau + 1)
            else:
                lower = self.frontier.min_bound()
                if lower is None:
                    lower = Fraction(0)
        return SearchResult(
            status=status,
            mode=self.mode,
            distance=distance,
            verified=verified,
            witness=self.best_forward,
            witness_cost=self.best_cost,
            lower=lower,
            upper=upper,
            swapped=self.swapped,
            order=self.order,
            stats=self.stats,
            q=self.q,
            g=self.g,
            tau=self.tau,
        )


def _trivial_result(q, g, swapped, mode, tau) -> SearchResult:
    cost = 0
    return SearchResult(
        status="ok",
        mode=mode,
        distance=cost if mode == "compute" else None,
        verified=None if mode == "compute" else cost <= tau,
        witness=[],
        witness_cost=cost,
        lower=Fraction(0),
        upper=cost,
        swapped=swapped,
        order=(),
        stats=SearchStats(),
        q=q,
        g=g,
        tau=tau,
    )


def _run(a: Graph, b: Graph, mode: str, tau, config: Optional[SearchConfig]) -> SearchResult:
    if config is None:
        config = SearchConfig()
    q, g, swapped = pad_pair(a, b)
    if q.n == 0:
        return _trivial_result(q, g, swapped, mode, tau)
    if config.order == "auto":
        order: Sequence[int] = compute_order(q, g)
    else:
        order = range(q.n)
    engine = _Engine(q, g, order, config, mode, tau, swapped)
    return engine.run()


def ged_compute(a: Graph, b: Graph, config: Optional[SearchConfig] = None) -> SearchResult:
    """Exact edit distance between two graphs sharing a label table."""
    return _run(a, b, "compute", None, config)


def ged_verify(a: Graph, b: Graph, tau: int, config: Optional[SearchConfig] = None) -> SearchResult:
    """Decide whether the edit distance is at most tau."""
    if not isinstance(tau, int) or isinstance(tau, bool) or tau < 0:
        raise ValueError("tau must be a non-negative integer")
    return _run(a, b, "verify", tau, config)
