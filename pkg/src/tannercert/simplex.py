"""Dense two-phase simplex over exact rationals with Bland's pivoting rule.

Solves  min c.x  subject to  A x = b, x >= 0.  Everything is Fraction; Bland
(smallest-index entering column, smallest-basic-index ratio ties) guarantees
termination without anti-cycling perturbations.  Sized for desk-scale decoding
problems, not production LP work.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)


@dataclass
class LpSolution:
    status: str
    x: tuple[Fraction, ...] | None
    value: Fraction | None


class _Tableau:
    """Basis-canonical rows plus a maintained reduced-cost row."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.reduced: list[Fraction] = []

    def set_cost(self, cost: list[Fraction]) -> None:
        m = len(self.rows)
        reduced = list(cost)
        for r in range(m):
            cb = cost[self.basis[r]]
            if cb:
                row = self.rows[r]
                reduced = [rc - cb * a for rc, a in zip(reduced, row)]
        self.reduced = reduced

    def pivot(self, r: int, col: int) -> None:
        piv = self.rows[r][col]
        inv = 1 / piv
        prow = [a * inv for a in self.rows[r]]
        self.rows[r] = prow
        self.rhs[r] *= inv
        for k, row in enumerate(self.rows):
            if k == r:
                continue
            f = row[col]
            if f:
                self.rows[k] = [a - f * p for a, p in zip(row, prow)]
                self.rhs[k] -= f * self.rhs[r]
        f = self.reduced[col]
        if f:
            self.reduced = [a - f * p for a, p in zip(self.reduced, prow)]
        self.basis[r] = col

    def run(self) -> str:
        while True:
            entering = next((j for j, rc in enumerate(self.reduced) if rc < 0), -1)
            if entering < 0:
                return OPTIMAL
            leave = -1
            best: Fraction | None = None
            for r, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[r] / a
                    if best is None or ratio < best or (
                        ratio == best and self.basis[r] < self.basis[leave]
                    ):
                        best = ratio
                        leave = r
            if leave < 0:
                return UNBOUNDED
            self.pivot(leave, entering)


def solve_standard_form(objective: Sequence, rows: Sequence[Sequence],
                        rhs: Sequence) -> LpSolution:
    """Two-phase simplex for min objective.x with A x = b, x >= 0."""
    n = len(objective)
    c = [Fraction(v) for v in objective]
    a = [[Fraction(v) for v in row] for row in rows]
    b = [Fraction(v) for v in rhs]
    for row in a:
        if len(row) != n:
            raise ValueError("row length mismatch")
    m = len(a)
    for r in range(m):
        if b[r] < 0:
            a[r] = [-v for v in a[r]]
            b[r] = -b[r]

    # phase one: artificial identity columns n..n+m-1
    rows1 = [a[r] + [Fraction(int(k == r)) for k in range(m)] for r in range(m)]
    tab = _Tableau(rows1, b, list(range(n, n + m)))
    tab.set_cost([_ZERO] * n + [Fraction(1)] * m)
    status = tab.run()
    assert status == OPTIMAL  # phase one is bounded below by 0
    if any(tab.basis[r] >= n and tab.rhs[r] != 0 for r in range(len(tab.rows))):
        return LpSolution(INFEASIBLE, None, None)

    # drive leftover artificials out of the basis; drop redundant rows
    keep: list[int] = []
    for r in range(len(tab.rows)):
        if tab.basis[r] < n:
            keep.append(r)
            continue
        piv = next((j for j in range(n) if tab.rows[r][j] != 0), None)
        if piv is None:
            continue  # all-zero row: redundant constraint
        tab.pivot(r, piv)
        keep.append(r)
    tab.rows = [tab.rows[r][:n] for r in keep]
    tab.rhs = [tab.rhs[r] for r in keep]
    tab.basis = [tab.basis[r] for r in keep]

    tab.set_cost(c)
    status = tab.run()
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED, None, None)
    x = [_ZERO] * n
    for r, col in enumerate(tab.basis):
        x[col] = tab.rhs[r]
    value = sum((cv * xv for cv, xv in zip(c, x) if cv), _ZERO)
    return LpSolution(OPTIMAL, tuple(x), value)
