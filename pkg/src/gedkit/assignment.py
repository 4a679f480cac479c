"""Exact square assignment with dual potentials and incremental re-pricing.

Costs are half-unit integers: every entry stores twice the intended value
so the matching arithmetic stays integral.  INFEASIBLE marks forbidden
entries; it is a sentinel excluded from potential updates, never a large
finite surrogate, so no spurious matching can be produced.

solve() runs the shortest-augmenting-path method, one row at a time, in
O(n^3).  After a solve, resolve_forbidden() reuses the dual potentials to
price every remaining column of a single row: it repeatedly forbids the
column currently matched to that row and re-augments from the row alone,
O(n^2) per step, yielding (column, total) pairs in non-decreasing total
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INFEASIBLE = math.inf


class CostMatrix:
    """Square matrix of half-unit integer costs with INFEASIBLE holes."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        self.n = len(rows)
        for r in rows:
            if len(r) != self.n:
                raise ValueError("cost matrix must be square")
            for c in r:
                if c == INFEASIBLE:
                    continue
                if c < 0 or c != int(c):
                    raise ValueError(f"costs must be non-negative integers, got {c!r}")
        self.rows = rows

    def __getitem__(self, rc: tuple[int, int]):
        return self.rows[rc[0]][rc[1]]


@dataclass
class AssignmentState:
    """Matching plus the dual potentials that certify its optimality.

    row_match[i] is the column of row i; col_match[j] the row of column j.
    For every feasible entry, row_potential[i] + col_potential[j] <= cost,
    with equality on matched entries.
    """

    row_match: list[int]
    col_match: list[int]
    row_potential: list[int]
    col_potential: list[int]
    total_cost: float  # int when feasible, INFEASIBLE otherwise
    feasible: bool


def _augment(rows, n, u, v, p, way, start_row, banned) -> bool:
    """Augment the matching from a free row via shortest reduced-cost paths.

    `p` is 1-based column -> row (0 means unmatched); `u`, `v` are 1-based
    potentials with scratch slot 0.  `banned` holds 0-based columns that
    `start_row` must avoid.  Ties between equally short paths resolve to
    the lowest column index.  Returns False when no augmenting path of
    finite cost exists (potentials stay dual-feasible regardless).
    """
    inf = math.inf
    p[0] = start_row
    j0 = 0
    minv = [inf] * (n + 1)
    used = [False] * (n + 1)
    while True:
        used[j0] = True
        i0 = p[j0]
        delta = inf
        j1 = 0
        du = u[i0]
        arow = rows[i0 - 1]
        from_start = i0 == start_row
        for j in range(1, n + 1):
            if used[j]:
                continue
            c = arow[j - 1]
            if from_start and (j - 1) in banned:
                c = inf
            cur = c - du - v[j]
            if cur < minv[j]:
                minv[j] = cur
                way[j] = j0
            if minv[j] < delta:
                delta = minv[j]
                j1 = j
        if delta == inf:
            return False
        for j in range(n + 1):
            if used[j]:
                u[p[j]] += delta
                v[j] -= delta
            else:
                minv[j] -= delta
        j0 = j1
        if p[j0] == 0:
            break
    while j0:
        j1 = way[j0]
        p[j0] = p[j1]
        j0 = j1
    return True


_NO_BAN: frozenset[int] = frozenset()


def solve(matrix: CostMatrix) -> AssignmentState:
    """Minimum-cost perfect matching; explicit infeasible result if none."""
    n = matrix.n
    rows = matrix.rows
    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        if not _augment(rows, n, u, v, p, way, i, _NO_BAN):
            return AssignmentState([], [], [], [], INFEASIBLE, False)
    row_match = [-1] * n
    col_match = [-1] * n
    for j in range(1, n + 1):
        row_match[p[j] - 1] = j - 1
        col_match[j - 1] = p[j] - 1
    total = sum(rows[i][row_match[i]] for i in range(n))
    return AssignmentState(row_match, col_match, u[1:], v[1:], total, True)


def resolve_forbidden(state: AssignmentState, matrix: CostMatrix, row: int, with_matching: bool = False):
    """Price every feasible column of `row`, cheapest first.

    Starting from an optimal state, yields (column, total) where total is
    the minimum perfect-matching cost subject to `row` taking that column.
    Each step forbids the column `row` currently holds and re-augments
    from `row` with the retained potentials, so totals never decrease.
    With `with_matching`, yields (column, total, row_match) including a
    snapshot of the full matching that achieves the total.
    """
    if not state.feasible:
        return
    n = matrix.n
    if n == 0:
        return
    rows = matrix.rows
    u = [0] + list(state.row_potential)
    v = [0] + list(state.col_potential)
    p = [0] + [state.col_match[j] + 1 for j in range(n)]
    way = [0] * (n + 1)
    banned: set[int] = set()
    col = state.row_match[row]
    total = state.total_cost
    while True:
        if with_matching:
            rm = [-1] * n
            for j in range(1, n + 1):
                if p[j] > 0:
                    rm[p[j] - 1] = j - 1
            rm[row] = col
            yield (col, total, rm)
        else:
            yield (col, total)
        banned.add(col)
        p[col + 1] = 0
        if not _augment(rows, n, u, v, p, way, row + 1, banned):
            return
        col = -1
        for j in range(1, n + 1):
            if p[j] == row + 1:
                col = j - 1
                break
        rm = [-1] * n
        for j in range(1, n + 1):
            if p[j] > 0:
                rm[p[j] - 1] = j - 1
        total = sum(rows[i][rm[i]] for i in range(n))


def dual_feasible(state: AssignmentState, matrix: CostMatrix) -> bool:
    """Check the certificate: potentials never exceed any feasible cost."""
    if not state.feasible:
        return True
    n = matrix.n
    for i in range(n):
        for j in range(n):
            c = matrix.rows[i][j]
            if c == INFEASIBLE:
                continue
            if state.row_potential[i] + state.col_potential[j] > c:
                return False
    for i in range(n):
        j = state.row_match[i]
        c = matrix.rows[i][j]
        if c == INFEASIBLE:
            return False
        if state.row_potential[i] + state.col_potential[j] != c:
            return False
    return True
