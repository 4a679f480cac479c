"""Labeled simple graphs and the edit-cost primitives built on them.

Graphs are undirected, vertex- and edge-labeled, without self-loops or
parallel edges.  Vertex ids are densified to 0..n-1 at construction; the
ids found in an input file are kept only for serialization and error
messages.  Label tokens are interned to small positive integers through a
:class:`LabelTable`; id 0 is reserved for the padding label that marks
artificial vertices and absent edges and can never be produced by parsing.

The text format handled here is line based:

    t # <int>            graph header
    v <id> <label>       vertex, must precede all edges of its graph
    e <id> <id> <label>  edge between two declared vertices

Tokens are whitespace separated.  Full-line comments starting with '#'
and blank lines are skipped.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

PAD = 0  # reserved label id: padding vertices, absent edges


class ParseError(ValueError):
    """Raised for malformed graph text; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class LabelInterner:
    """Bijective token <-> id table with id 0 reserved for padding."""

    __slots__ = ("_ids", "_tokens")

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}
        self._tokens: list[str | None] = [None]

    def intern(self, token: str) -> int:
        label = self._ids.get(token)
        if label is None:
            label = len(self._tokens)
            self._ids[token] = label
            self._tokens.append(token)
        return label

    def token(self, label: int) -> str:
        if label == PAD:
            raise ValueError("the padding label is internal and has no token")
        return self._tokens[label]

    def __len__(self) -> int:
        return len(self._tokens) - 1

    def __contains__(self, token: str) -> bool:
        return token in self._ids


class LabelTable:
    """Paired interners for the vertex and edge label spaces."""

    __slots__ = ("vertex", "edge")

    def __init__(self) -> None:
        self.vertex = LabelInterner()
        self.edge = LabelInterner()


class Graph:
    """Immutable-after-construction labeled graph with O(1) edge lookup."""

    __slots__ = ("labels", "adj", "edge_list", "table", "tag", "orig_ids", "_emap")

    def __init__(
        self,
        labels: Sequence[int],
        edges: Iterable[tuple[int, int, int]],
        table: LabelTable,
        tag: int = 0,
        orig_ids: Sequence[int] | None = None,
    ):
        n = len(labels)
        self.labels = tuple(labels)
        self.table = table
        self.tag = tag
        self.orig_ids = tuple(orig_ids) if orig_ids is not None else tuple(range(n))
        if len(self.orig_ids) != n:
            raise ValueError("orig_ids length does not match vertex count")
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        emap: dict[tuple[int, int], int] = {}
        norm: list[tuple[int, int, int]] = []
        for u, w, lbl in edges:
            if not (0 <= u < n and 0 <= w < n):
                raise ValueError(f"edge ({u},{w}) references a vertex out of range")
            if u == w:
                raise ValueError(f"self-loop at vertex {u}")
            if lbl == PAD:
                raise ValueError("edges cannot carry the padding label")
            if u > w:
                u, w = w, u
            if (u, w) in emap:
                raise ValueError(f"duplicate edge ({u},{w})")
            emap[(u, w)] = lbl
            norm.append((u, w, lbl))
            adj[u].append((w, lbl))
            adj[w].append((u, lbl))
        self.adj = adj
        self.edge_list = tuple(norm)
        self._emap = emap

    @classmethod
    def from_tokens(
        cls,
        vertex_labels: Sequence[str],
        edges: Iterable[tuple[int, int, str]] = (),
        table: LabelTable | None = None,
        tag: int = 0,
    ) -> "Graph":
        """Build a graph from label tokens, interning them as needed."""
        table = table if table is not None else LabelTable()
        labels = [table.vertex.intern(t) for t in vertex_labels]
        interned = [(u, w, table.edge.intern(t)) for u, w, t in edges]
        return cls(labels, interned, table, tag=tag)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return len(self.edge_list)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edge_label(self, u: int, w: int) -> int:
        """Label of edge (u, w), or PAD when the edge does not exist."""
        if u > w:
            u, w = w, u
        return self._emap.get((u, w), PAD)

    def edges(self) -> Iterator[tuple[int, int, int]]:
        return iter(self.edge_list)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.labels == other.labels and self._emap == other._emap

    def __ne__(self, other: object) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None  # mutable adjacency internals; structural eq only

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count}, tag={self.tag})"


def parse_graphs(source, table: LabelTable | None = None) -> list[Graph]:
    """Parse every graph in a text stream, in file order.

    `source` may be a string or any iterable of lines.  All graphs share
    one label table so ids are comparable across the whole stream; pass
    `table` to extend an existing one (e.g. when two files must agree).
    """
    table = table if table is not None else LabelTable()
    if isinstance(source, bytes):
        source = source.decode()
    lines = source.splitlines() if isinstance(source, str) else source

    graphs: list[Graph] = []
    tag: int | None = None
    dense: dict[int, int] = {}
    labels: list[int] = []
    edges: list[tuple[int, int, int]] = []
    seen_edges: set[tuple[int, int]] = set()
    orig: list[int] = []
    edges_started = False

    def flush() -> None:
        nonlocal tag
        if tag is None:
            return
        graphs.append(Graph(labels, edges, table, tag=tag, orig_ids=orig))
        tag = None

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "t":
            if len(tok) != 3 or tok[1] != "#":
                raise ParseError(f"malformed graph header {line!r}", line_no)
            flush()
            try:
                tag = int(tok[2])
            except ValueError:
                raise ParseError(f"malformed graph header {line!r}", line_no) from None
            dense, labels, edges, orig = {}, [], [], []
            seen_edges = set()
            edges_started = False
        elif kind == "v":
            if tag is None:
                raise ParseError("vertex declared outside a graph", line_no)
            if edges_started:
                raise ParseError("vertex declared after edges", line_no)
            if len(tok) != 3:
                raise ParseError(f"malformed vertex line {line!r}", line_no)
            try:
                vid = int(tok[1])
            except ValueError:
                raise ParseError(f"malformed vertex id {tok[1]!r}", line_no) from None
            if vid in dense:
                raise ParseError(f"duplicate vertex id {vid}", line_no)
            dense[vid] = len(labels)
            labels.append(table.vertex.intern(tok[2]))
            orig.append(vid)
        elif kind == "e":
            if tag is None:
                raise ParseError("edge declared outside a graph", line_no)
            if len(tok) != 4:
                raise ParseError(f"malformed edge line {line!r}", line_no)
            try:
                a, b = int(tok[1]), int(tok[2])
            except ValueError:
                raise ParseError(f"malformed edge endpoints in {line!r}", line_no) from None
            if a not in dense or b not in dense:
                raise ParseError(f"edge references unknown vertex in {line!r}", line_no)
            u, w = dense[a], dense[b]
            if u == w:
                raise ParseError(f"self-loop at vertex {a}", line_no)
            key = (u, w) if u < w else (w, u)
            if key in seen_edges:
                raise ParseError(f"duplicate edge ({a},{b})", line_no)
            seen_edges.add(key)
            edges.append((u, w, table.edge.intern(tok[3])))
            edges_started = True
        else:
            raise ParseError(f"unrecognized line {line!r}", line_no)
    flush()
    return graphs


def serialize_graphs(graphs: Iterable[Graph]) -> str:
    """Inverse of parse_graphs for graphs without padding labels."""
    out: list[str] = []
    for g in graphs:
        vt, et = g.table.vertex, g.table.edge
        out.append(f"t # {g.tag}")
        for v in range(g.n):
            out.append(f"v {g.orig_ids[v]} {vt.token(g.labels[v])}")
        for u, w, lbl in g.edges():
            out.append(f"e {g.orig_ids[u]} {g.orig_ids[w]} {et.token(lbl)}")
    return "\n".join(out) + ("\n" if out else "")


class PaddedPair(NamedTuple):
    q: Graph
    g: Graph
    swapped: bool  # True when the second argument became q


def pad_pair(a: Graph, b: Graph) -> PaddedPair:
    """Orient a pair as (q, g) with |V(q)| <= |V(g)| and pad q.

    The smaller graph (ties: the first argument) becomes q and is extended
    with isolated PAD-labeled vertices until both sides have the same
    vertex count.  g is returned unchanged.
    """
    if a.table is not b.table:
        raise ValueError("graphs must share one label table")
    q, g, swapped = (a, b, False) if a.n <= b.n else (b, a, True)
    if q.n < g.n:
        extra = g.n - q.n
        base = (max(q.orig_ids) + 1) if q.orig_ids else 0
        q = Graph(
            list(q.labels) + [PAD] * extra,
            q.edge_list,
            q.table,
            tag=q.tag,
            orig_ids=list(q.orig_ids) + [base + k for k in range(extra)],
        )
    return PaddedPair(q, g, swapped)


# ---------------------------------------------------------------------------
# multisets

def _counts(s) -> Mapping[int, int]:
    return s if isinstance(s, Mapping) else Counter(s)


def intersection_size(a: Mapping[int, int], b: Mapping[int, int]) -> int:
    """Cardinality of the multiset intersection, scanning the smaller table."""
    if len(b) < len(a):
        a, b = b, a
    return sum(min(c, b.get(k, 0)) for k, c in a.items())


def multiset_edit_distance(s1, s2) -> int:
    """Edits (insert, delete, relabel at unit cost) turning s1 into s2.

    Equals max(|s1|, |s2|) - |s1 and s2|.  Accepts mappings from element
    to multiplicity or plain iterables of elements.
    """
    c1, c2 = _counts(s1), _counts(s2)
    n1, n2 = sum(c1.values()), sum(c2.values())
    return max(n1, n2) - intersection_size(c1, c2)


# ---------------------------------------------------------------------------
# mappings and edit cost

@dataclass(frozen=True)
class FullMapping:
    """A bijection between the vertices of two equal-size graphs."""

    forward: tuple[int, ...]
    inverse: tuple[int, ...]

    @classmethod
    def from_forward(cls, forward: Sequence[int]) -> "FullMapping":
        n = len(forward)
        inverse = [-1] * n
        for v, u in enumerate(forward):
            if not (0 <= u < n) or inverse[u] != -1:
                raise ValueError("forward array is not a bijection")
            inverse[u] = v
        return cls(tuple(forward), tuple(inverse))

    def __len__(self) -> int:
        return len(self.forward)


def editorial_cost(q: Graph, g: Graph, forward: Sequence[int]) -> int:
    """Edit operations implied by a full vertex mapping of padded graphs.

    Counts one operation per vertex whose labels disagree under the
    mapping, per q-edge that is missing or differently labeled in g, and
    per g-edge with no pre-image in q.  Runs in O(size(q) + size(g)).
    """
    n = q.n
    if g.n != n or len(forward) != n:
        raise ValueError("editorial cost requires padded graphs and a full mapping")
    inverse = [-1] * n
    for v, u in enumerate(forward):
        inverse[u] = v
    cost = 0
    ql, gl = q.labels, g.labels
    for v in range(n):
        if ql[v] != gl[forward[v]]:
            cost += 1
    for u, w, lbl in q.edges():
        if g.edge_label(forward[u], forward[w]) != lbl:
            cost += 1
    for u, w, _lbl in g.edges():
        if q.edge_label(inverse[u], inverse[w]) == PAD:
            cost += 1
    return cost


def induced_mapping_cost(q: Graph, g: Graph, pairs: Sequence[tuple[int, int]]) -> int:
    """Editorial cost restricted to the subgraphs induced by a partial mapping.

    `pairs` lists (q vertex, g vertex) assignments.  Only edges with both
    endpoints mapped participate on either side.
    """
    fwd = {v: u for v, u in pairs}
    inv = {u: v for v, u in pairs}
    if len(fwd) != len(pairs) or len(inv) != len(pairs):
        raise ValueError("partial mapping must be injective")
    cost = 0
    for v, u in pairs:
        if q.labels[v] != g.labels[u]:
            cost += 1
    for u, w, lbl in q.edges():
        if u in fwd and w in fwd:
            if g.edge_label(fwd[u], fwd[w]) != lbl:
                cost += 1
    for u, w, _lbl in g.edges():
        if u in inv and w in inv:
            if q.edge_label(inv[u], inv[w]) == PAD:
                cost += 1
    return cost
