"""Synthetic graph pairs for benchmarks and randomized tests.

gen_random_graph draws a labeled graph with a target edge density;
perturb applies a fixed number of random edit operations, which bounds
the edit distance between the original and the result by that number.
Both are deterministic functions of their seeds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import PAD, Graph, LabelTable


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one random graph."""

    n: int
    edge_density: float = 0.20
    vertex_labels: int = 5
    edge_labels: int = 2
    seed: int = 0


@dataclass(frozen=True)
class PerturbSpec:
    """Number of edit operations to apply and the seed picking them."""

    x: int
    seed: int = 0


def gen_random_graph(spec: GenSpec, table: LabelTable | None = None) -> Graph:
    """Uniform labeled graph with round(density * n(n-1)/2) edges."""
    if spec.n < 1:
        raise ValueError("need at least one vertex")
    if not (0 < spec.edge_density <= 1):
        raise ValueError("edge density must be in (0, 1]")
    if spec.vertex_labels < 1 or spec.edge_labels < 1:
        raise ValueError("label alphabets must be non-empty")
    rng = random.Random(spec.seed)
    n = spec.n
    labels = [str(rng.randrange(spec.vertex_labels)) for _ in range(n)]
    m = round(spec.edge_density * n * (n - 1) / 2)
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n)]
    chosen = rng.sample(pairs, m)
    edges = [(u, w, str(rng.randrange(spec.edge_labels))) for u, w in chosen]
    return Graph.from_tokens(labels, edges, table=table)


def perturb(g: Graph, spec: PerturbSpec) -> Graph:
    """Apply x uniformly chosen applicable edit operations to a copy of g.

    Operations: edge insertion, edge deletion, vertex relabel, edge
    relabel, vertex insertion.  Vertex deletion is excluded.  Relabels
    always pick a different label, drawn from the labels present in the
    original graph, so the edit distance to the result is at most x.
    """
    if PAD in g.labels:
        raise ValueError("cannot perturb a padded graph")
    rng = random.Random(spec.seed)
    labels = list(g.labels)
    edges = {(u, w): lbl for u, w, lbl in g.edges()}
    edge_keys = sorted(edges)
    vertex_alphabet = sorted(set(g.labels))
    edge_alphabet = sorted({lbl for _u, _w, lbl in g.edges()})

    for _ in range(spec.x):
        n = len(labels)
        ops = []
        if n >= 2 and len(edges) < n * (n - 1) // 2 and edge_alphabet:
            ops.append("edge_insert")
        if edge_keys:
            ops.append("edge_delete")
        if n >= 1 and len(vertex_alphabet) >= 2:
            ops.append("vertex_relabel")
        if edge_keys and len(edge_alphabet) >= 2:
            ops.append("edge_relabel")
        if vertex_alphabet:
            ops.append("vertex_insert")
        if not ops:
            break
        op = rng.choice(ops)
        if op == "edge_insert":
            while True:
                u = rng.randrange(n)
                w = rng.randrange(n)
                if u == w:
                    continue
                if u > w:
                    u, w = w, u
                if (u, w) not in edges:
                    break
            edges[(u, w)] = rng.choice(edge_alphabet)
            edge_keys.append((u, w))
        elif op == "edge_delete":
            key = rng.choice(edge_keys)
            edge_keys.remove(key)
            del edges[key]
        elif op == "vertex_relabel":
            v = rng.randrange(n)
            labels[v] = rng.choice([a for a in vertex_alphabet if a != labels[v]])
        elif op == "edge_relabel":
            key = rng.choice(edge_keys)
            edges[key] = rng.choice([a for a in edge_alphabet if a != edges[key]])
        else:  # vertex_insert
            labels.append(rng.choice(vertex_alphabet))
    return Graph(labels, [(u, w, lbl) for (u, w), lbl in edges.items()], g.table, tag=g.tag)


def make_pair(
    n: int,
    x: int,
    seed: int,
    edge_density: float = 0.20,
    vertex_labels: int = 5,
    edge_labels: int = 2,
) -> tuple[Graph, Graph]:
    """A base graph and an x-operation perturbation of it, sharing a table."""
    base = gen_random_graph(
        GenSpec(n, edge_density, vertex_labels, edge_labels, seed=seed)
    )
    other = perturb(base, PerturbSpec(x, seed=seed + 1_000_003))
    return base, other
