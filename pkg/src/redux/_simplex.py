"""Exact rational linear programming, phase-1 simplex with Bland's rule.

Only feasibility is needed: find x >= 0 with Ax = b, all entries exact
Fractions.  Bland's rule guarantees termination; problem sizes here are
tiny (weight separation and matrix-order validation).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve Ax = b, x >= 0 exactly; return a point or None when infeasible."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = [[Fraction(v) for v in row] for row in rows]
    b = [Fraction(v) for v in rhs]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    # tableau columns: n structural + m artificial, basis starts artificial
    width = n + m
    T = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))

    # phase-1 objective: minimize the sum of artificials
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] += T[i][j]

    in_basis = [False] * width
    for var in basis:
        in_basis[var] = True
    while True:
        # Bland's rule over structural columns; artificials never re-enter
        enter = next((j for j in range(n) if cost[j] > 0 and not in_basis[j]), None)
        if enter is None:
            break
        ratios = [
            (T[i][width] / T[i][enter], basis[i], i)
            for i in range(m)
            if T[i][enter] > 0
        ]
        if not ratios:
            break  # unbounded cannot happen in phase 1; defensive
        _, _, pivot_row = min(ratios)
        in_basis[basis[pivot_row]] = False
        in_basis[enter] = True
        _pivot(T, cost, basis, pivot_row, enter, width)

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = T[i][width]
        elif T[i][width] != 0:
            return None  # defensive: nonzero artificial after optimum
    return x


def _pivot(T, cost, basis, row, col, width):
    pv = T[row][col]
    T[row] = [v / pv for v in T[row]]
    for i in range(len(T)):
        if i != row and T[i][col]:
            f = T[i][col]
            T[i] = [a - f * b for a, b in zip(T[i], T[row])]
    if cost[col]:
        f = cost[col]
        for j in range(width + 1):
            cost[j] -= f * T[row][j]
    basis[row] = col
