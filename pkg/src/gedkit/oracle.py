"""Brute-force references for the search, the bounds, and the solver.

Everything here enumerates permutations in lexicographic order with no
pruning whatsoever.  Being slow and obviously correct is the point: these
routines anchor the test suite, so they must share no machinery with the
engines they check beyond the editorial-cost primitive itself.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .assignment import INFEASIBLE, CostMatrix
from .graphs import Graph, editorial_cost, pad_pair

DEFAULT_MAX_VERTICES = 8


class OracleLimitError(Exception):
    """Raised when an instance is too large for exhaustive enumeration."""


def brute_force_ged(a: Graph, b: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> int:
    """Exact edit distance by trying every full mapping of the padded pair."""
    q, g, _ = pad_pair(a, b)
    n = g.n
    if n > max_vertices:
        raise OracleLimitError(f"{n} vertices exceed the enumeration limit {max_vertices}")
    best = math.inf
    for perm in itertools.permutations(range(n)):
        c = editorial_cost(q, g, perm)
        if c < best:
            best = c
    return best


def brute_force_extension_min(
    q: Graph,
    g: Graph,
    pairs: Sequence[tuple[int, int]],
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> int:
    """Cheapest editorial cost over all full mappings extending `pairs`.

    The graphs must already be padded to equal size; `pairs` assigns some
    q vertices to distinct g vertices and is kept fixed.
    """
    n = q.n
    if g.n != n:
        raise ValueError("graphs must be padded to equal vertex counts")
    if n > max_vertices:
        raise OracleLimitError(f"{n} vertices exceed the enumeration limit {max_vertices}")
    forward = [-1] * n
    for v, u in pairs:
        forward[v] = u
    free_q = [v for v in range(n) if forward[v] == -1]
    used = {u for _v, u in pairs}
    free_g = [u for u in range(n) if u not in used]
    if len(free_q) != len(free_g):
        raise ValueError("partial mapping must be injective")
    best = math.inf
    for perm in itertools.permutations(free_g):
        for v, u in zip(free_q, perm):
            forward[v] = u
        c = editorial_cost(q, g, forward)
        if c < best:
            best = c
    return best


def brute_force_assignment(matrix: CostMatrix, max_n: int = DEFAULT_MAX_VERTICES):
    """Minimum assignment cost over all permutations; INFEASIBLE if none."""
    n = matrix.n
    if n > max_n:
        raise OracleLimitError(f"{n}x{n} matrix exceeds the enumeration limit {max_n}")
    rows = matrix.rows
    best = INFEASIBLE
    for perm in itertools.permutations(range(n)):
        total = 0
        ok = True
        for i, j in enumerate(perm):
            c = rows[i][j]
            if c == INFEASIBLE:
                ok = False
                break
            total += c
        if ok and total < best:
            best = total
    return best
