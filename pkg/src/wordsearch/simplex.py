"""Exact two-phase simplex over the rationals with Bland's rule."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple


class LPResult(NamedTuple):
    status: str  # "optimal", "infeasible" or "unbounded"
    x: list
    value: Fraction | None


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r, col):
        row = self.rows[r]
        piv = row[col]
        if piv != 1:
            inv = 1 / piv
            self.rows[r] = row = [a * inv for a in row]
            self.rhs[r] *= inv
        b = self.rhs[r]
        nz = [j for j, a in enumerate(row) if a]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[col]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * b
        self.basis[r] = col

    def reduced_costs(self, cost):
        red = list(cost)
        for r, bvar in enumerate(self.basis):
            cb = cost[bvar]
            if cb:
                for j, a in enumerate(self.rows[r]):
                    if a:
                        red[j] -= cb * a
        return red

    def run(self, cost, allowed):
        """Minimise cost over the current basis; Bland's rule on ``allowed`` columns."""
        red = self.reduced_costs(cost)
        while True:
            col = next((j for j in allowed if red[j] < 0), None)
            if col is None:
                return True
            best = None
            for r, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            r = best[1]
            self.pivot(r, col)
            f = red[col]
            row = self.rows[r]
            for j, a in enumerate(row):
                if a:
                    red[j] -= f * a


def minimize(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()) -> LPResult:
    """Minimise c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x >= 0."""
    n = len(c)
    c = [Fraction(v) for v in c]
    rows, rhs, kinds = [], [], []
    for a, b in zip(A_ub, b_ub):
        rows.append([Fraction(v) for v in a])
        rhs.append(Fraction(b))
        kinds.append("ub")
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a])
        rhs.append(Fraction(b))
        kinds.append("eq")
    m = len(rows)
    n_slack = kinds.count("ub")
    # Columns: originals, slacks, artificials.
    width = n + n_slack + m
    table, basis, artificial = [], [], []
    s = 0
    for i, (a, b, kind) in enumerate(zip(rows, rhs, kinds)):
        row = a + [Fraction(0)] * (width - n)
        if kind == "ub":
            row[n + s] = Fraction(1)
            s += 1
        sign = -1 if b < 0 else 1
        if sign < 0:
            row = [-v for v in row]
            rhs[i] = -b
        if kind == "ub" and sign > 0:
            basis.append(n + s - 1)
        else:
            row[n + n_slack + i] = Fraction(1)
            basis.append(n + n_slack + i)
            artificial.append(n + n_slack + i)
        table.append(row)
    tab = _Tableau(table, rhs, basis)
    real = list(range(n + n_slack))
    if artificial:
        phase1 = [Fraction(0)] * width
        for j in artificial:
            phase1[j] = Fraction(1)
        tab.run(phase1, real + artificial)
        if any(tab.rhs[r] for r, b in enumerate(tab.basis) if b in artificial):
            return LPResult("infeasible", None, None)
        # Drive zero-level artificials out of the basis, dropping redundant rows.
        keep = []
        for r in range(len(tab.rows)):
            if tab.basis[r] in artificial:
                col = next((j for j in real if tab.rows[r][j]), None)
                if col is None:
                    continue
                tab.pivot(r, col)
            keep.append(r)
        tab.rows = [tab.rows[r] for r in keep]
        tab.rhs = [tab.rhs[r] for r in keep]
        tab.basis = [tab.basis[r] for r in keep]
    cost = c + [Fraction(0)] * (width - n)
    if not tab.run(cost, real):
        return LPResult("unbounded", None, None)
    x = [Fraction(0)] * width
    for r, b in enumerate(tab.basis):
        x[b] = tab.rhs[r]
    x = x[:n]
    return LPResult("optimal", x, sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)))
