"""Exact two-phase simplex for ``max c.x  s.t.  A x = b, x >= 0``.

The tableau is kept integral with fraction-free (Bareiss/Edmonds) pivoting:
every entry is an integer and the true tableau is ``T / d`` where ``d`` is the
previous pivot, so all divisions below are exact.  Pivoting follows Bland's
rule, so the method terminates on degenerate problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

Number = int | Fraction
Row = Sequence[Number] | Mapping[int, Number]


@dataclass
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: list[Fraction] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _sparse(row: Row, n: int) -> dict[int, Fraction]:
    items = row.items() if isinstance(row, Mapping) else enumerate(row)
    if not isinstance(row, Mapping) and len(row) != n:
        raise ValueError(f"row has {len(row)} entries, expected {n}")
    return {j: Fraction(v) for j, v in items if v}


def _integer_row(values: Mapping[int, Fraction], width: int) -> tuple[list[int], int]:
    """Dense integer row proportional to ``values`` and the positive scale used."""
    scale = lcm(*(v.denominator for v in values.values())) if values else 1
    out = [0] * width
    for j, v in values.items():
        out[j] = v.numerator * (scale // v.denominator)
    return out, scale


class _Tableau:
    """Integer tableau; the last column is the right-hand side."""

    def __init__(self, rows: list[list[int]], basis: list[int]):
        self.rows = rows
        self.basis = basis
        self.d = 1

    def pivot(self, r: int, c: int, extra: list[list[int]]) -> None:
        prow = self.rows[r]
        p = prow[c]
        d = self.d
        for rows in (self.rows, extra):
            for i, row in enumerate(rows):
                if row is prow:
                    continue
                f = row[c]
                if f:
                    rows[i] = [(p * a - f * b) // d for a, b in zip(row, prow)]
                elif p != d:
                    rows[i] = [p * a // d for a in row]
        self.basis[r] = c
        self.d = p

    def entering(self, obj: list[int], allowed: int) -> int:
        for j in range(allowed):
            if obj[j] < 0:
                return j
        return -1

    def leaving(self, c: int) -> int:
        best = -1
        for i, row in enumerate(self.rows):
            a = row[c]
            if a <= 0:
                continue
            if best < 0:
                best = i
                continue
            brow = self.rows[best]
            lhs = row[-1] * brow[c]
            rhs = brow[-1] * a
            if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                best = i
        return best


def maximize(c: Sequence[Number], a_eq: Sequence[Row], b_eq: Sequence[Number]) -> LPResult:
    """Maximize ``c.x`` over ``{x >= 0 : a_eq x = b_eq}`` in exact arithmetic."""
    n = len(c)
    m = len(a_eq)
    if len(b_eq) != m:
        raise ValueError("a_eq and b_eq have different lengths")

    rows: list[list[int]] = []
    for i in range(m):
        sparse = _sparse(a_eq[i], n)
        rhs = Fraction(b_eq[i])
        if rhs:
            sparse[n] = rhs
        if rhs < 0:
            sparse = {j: -v for j, v in sparse.items()}
        # artificial columns are never re-entered or read, so they are not stored;
        # basis labels n + i still mark which rows hold an artificial
        ints, _ = _integer_row(sparse, n + 1)
        rows.append(ints)

    cost_sparse = _sparse(c, n)
    cost, cost_scale = _integer_row(cost_sparse, n)
    # objective rows hold -reduced costs; the last entry is the current value
    phase2 = [-v for v in cost] + [0]
    phase1 = [0] * (n + 1)
    for row in rows:
        for j in range(n):
            phase1[j] -= row[j]
        phase1[-1] -= row[-1]

    tab = _Tableau(rows, [n + i for i in range(m)])
    objs = [phase1, phase2]

    while True:
        j = tab.entering(objs[0], n)
        if j < 0:
            break
        r = tab.leaving(j)
        tab.pivot(r, j, objs)

    if objs[0][-1] < 0:
        return LPResult("infeasible")

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.rows):
        if tab.basis[i] < n:
            i += 1
            continue
        row = tab.rows[i]
        j = next((k for k in range(n) if row[k]), -1)
        if j < 0:
            del tab.rows[i]
            del tab.basis[i]
            continue
        if row[j] < 0:
            tab.rows[i] = [-v for v in row]
        tab.pivot(i, j, objs)
        i += 1

    objs = [objs[1]]

    while True:
        j = tab.entering(objs[0], n)
        if j < 0:
            break
        r = tab.leaving(j)
        if r < 0:
            return LPResult("unbounded")
        tab.pivot(r, j, objs)

    d = tab.d
    x = [Fraction(0)] * n
    for row, var in zip(tab.rows, tab.basis):
        x[var] = Fraction(row[-1], d)
    value = Fraction(objs[0][-1], d * cost_scale)
    return LPResult("optimal", value, x)


def is_feasible(a_eq: Sequence[Row], b_eq: Sequence[Number], n: int) -> tuple[bool, list[Fraction] | None]:
    """Exact feasibility of ``{x >= 0 : a_eq x = b_eq}``; returns a point when feasible."""
    res = maximize([0] * n, a_eq, b_eq)
    return res.feasible, res.x
