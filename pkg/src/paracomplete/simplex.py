"""Exact two-phase simplex over ``fractions.Fraction``.

Solves ``max c.x  s.t.  A x = b, x >= 0`` with Bland's rule, so it always
terminates. No floating point is involved anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["LPResult", "solve", "feasible_point"]

Number = Fraction | int


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[list[Fraction]] = None
    value: Optional[Fraction] = None


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, col: int) -> None:
        row = self.rows[r]
        piv = row[col]
        if piv != 1:
            inv = 1 / piv
            self.rows[r] = row = [v * inv for v in row]
            self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[col]
            if f:
                self.rows[i] = [o - f * v if v else o for o, v in zip(other, row)]
                self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = col

    def reduced_costs(self, cost: Sequence[Fraction]) -> list[Fraction]:
        # minimization costs; d_j = c_j - c_B B^-1 A_j
        d = list(cost)
        for r, bcol in enumerate(self.basis):
            cb = cost[bcol]
            if cb:
                for j, v in enumerate(self.rows[r]):
                    if v:
                        d[j] -= cb * v
        return d

    def run(self, cost: Sequence[Fraction], allowed: Sequence[bool]) -> str:
        """Minimize ``cost`` over the current tableau with Bland's rule."""
        while True:
            d = self.reduced_costs(cost)
            entering = next((j for j, dj in enumerate(d) if dj < 0 and allowed[j]), None)
            if entering is None:
                return "optimal"
            best = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return "unbounded"
            self.pivot(best[1], entering)


def solve(A: Sequence[Sequence[Number]], b: Sequence[Number],
          c: Sequence[Number] | None = None, maximize: bool = True) -> LPResult:
    """Solve an equality-form LP exactly.

    With ``c`` omitted only feasibility is decided and the returned vertex is
    any basic feasible solution.
    """
    m = len(A)
    n = len(A[0]) if m else (len(c) if c is not None else 0)
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # phase I: one artificial per row
    for i in range(m):
        rows[i] = rows[i] + [Fraction(int(i == r)) for r in range(m)]
    tab = _Tableau(rows, rhs, [n + i for i in range(m)])
    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1, [True] * (n + m))
    infeas = sum((tab.rhs[r] for r, bc in enumerate(tab.basis) if bc >= n), Fraction(0))
    if infeas > 0:
        return LPResult("infeasible")
    # drive degenerate artificials out of the basis, dropping redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r], tab.rhs[r], tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1
    tab.rows = [row[:n] for row in tab.rows]
    if c is None:
        status = "optimal"
    else:
        cost = [Fraction(-v if maximize else v) for v in c]
        status = tab.run(cost, [True] * n)
    x = [Fraction(0)] * n
    for r, bc in enumerate(tab.basis):
        x[bc] = tab.rhs[r]
    if status == "unbounded":
        return LPResult("unbounded")
    value = None
    if c is not None:
        value = sum((Fraction(cj) * xj for cj, xj in zip(c, x)), Fraction(0))
    return LPResult("optimal", x, value)


def feasible_point(A: Sequence[Sequence[Number]], b: Sequence[Number]) -> Optional[list[Fraction]]:
    res = solve(A, b)
    return res.x if res.status == "optimal" else None
