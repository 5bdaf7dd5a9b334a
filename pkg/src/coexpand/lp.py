"""Two-phase primal simplex over exact rationals with Bland's rule.

Standard form only: minimize c·x subject to A x = b, x >= 0. Callers build
split/slack formulations on top of :func:`solve_standard`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPSolution:
    status: str
    x: tuple | None = None
    value: Fraction | None = None
    dual: tuple | None = None  # y with A^T y <= c and b·y = value at optimality
    basis: tuple = ()
    pivots: int = 0


def _independent_rows(A, b):
    """Indices of a maximal independent row subset; None if the system is inconsistent."""
    echelon = {}  # pivot column -> reduced row (A part + rhs)
    keep = []
    n = len(A[0]) if A else 0
    for i, (row, rhs) in enumerate(zip(A, b)):
        r = list(row) + [rhs]
        for pc, er in echelon.items():
            if r[pc]:
                f = r[pc] / er[pc]
                r = [x - f * y for x, y in zip(r, er)]
        pc = next((j for j in range(n) if r[j]), None)
        if pc is None:
            if r[n]:
                return None
            continue
        echelon[pc] = r
        keep.append(i)
    return keep


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.T = rows  # list of lists, last entry is the rhs
        self.basis = basis
        for r, v in zip(self.T, rhs):
            r.append(v)
        self.pivots = 0

    def pivot(self, r, c):
        T = self.T
        inv = 1 / T[r][c]
        T[r] = [x * inv for x in T[r]]
        pr = T[r]
        for i, row in enumerate(T):
            if i != r and row[c]:
                f = row[c]
                T[i] = [x - f * y for x, y in zip(row, pr)]
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost, ncols):
        red = list(cost[:ncols])
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.T[i]
                for j in range(ncols):
                    if row[j]:
                        red[j] -= cb * row[j]
        return red

    def run(self, cost, allowed):
        """Bland's rule iterations; returns False if unbounded."""
        ncols = len(cost)
        while True:
            red = self.reduced_costs(cost, ncols)
            enter = next((j for j in range(ncols) if allowed[j] and red[j] < 0), None)
            if enter is None:
                return True
            best = None
            for i, row in enumerate(self.T):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], enter)


def solve_standard(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPSolution:
    """Minimize c·x s.t. A x = b, x >= 0, exactly."""
    n = len(c)
    c = [Fraction(x) for x in c]
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    m_all = len(A)
    if m_all == 0:
        if any(x < 0 for x in c):
            return LPSolution(UNBOUNDED)
        return LPSolution(OPTIMAL, tuple(Fraction(0) for _ in range(n)), Fraction(0), ())

    sign = [(-1 if bi < 0 else 1) for bi in b]
    A = [[s * x for x in row] for s, row in zip(sign, A)]
    b = [s * x for s, x in zip(sign, b)]
    keep = _independent_rows(A, b)
    if keep is None:
        return LPSolution(INFEASIBLE)
    m = len(keep)
    rows = [A[i] + [Fraction(int(k == j)) for j in range(m)] for k, i in enumerate(keep)]
    tab = _Tableau(rows, [b[i] for i in keep], list(range(n, n + m)))

    # phase 1: minimize the sum of artificials
    cost1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(cost1, [True] * n + [False] * m)
    if any(tab.T[i][-1] for i in range(m) if tab.basis[i] >= n):
        return LPSolution(INFEASIBLE, pivots=tab.pivots)
    for i in range(m):
        if tab.basis[i] >= n:
            j = next(j for j in range(n) if tab.T[i][j])  # exists: rows are independent
            tab.pivot(i, j)

    cost2 = c + [Fraction(0)] * m
    if not tab.run(cost2, [True] * n + [False] * m):
        return LPSolution(UNBOUNDED, pivots=tab.pivots)

    x = [Fraction(0)] * n
    for i, bi in enumerate(tab.basis):
        x[bi] = tab.T[i][-1]
    # artificial columns hold B^{-1}; y^T = c_B^T B^{-1}
    y_kept = [sum(c[bi] * tab.T[i][n + k] for i, bi in enumerate(tab.basis)) for k in range(m)]
    y = [Fraction(0)] * m_all
    for k, i in enumerate(keep):
        y[i] = sign[i] * y_kept[k]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LPSolution(OPTIMAL, tuple(x), value, tuple(y), tuple(tab.basis), tab.pivots)


def check_standard_certificate(c, A, b, x, y) -> bool:
    """Primal feasibility, dual feasibility and zero duality gap."""
    if any(xi < 0 for xi in x):
        return False
    if any(sum(a * xi for a, xi in zip(row, x)) != bi for row, bi in zip(A, b)):
        return False
    for j in range(len(c)):
        if sum(A[i][j] * y[i] for i in range(len(A))) > c[j]:
            return False
    return sum(ci * xi for ci, xi in zip(c, x)) == sum(bi * yi for bi, yi in zip(b, y))
