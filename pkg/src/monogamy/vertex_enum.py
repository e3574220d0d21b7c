"""Exact vertex enumeration of ``{x >= 0 : A x = b}`` by double description.

Used as an LP-free cross-check of the simplex: the maximum of a linear
objective over a polytope is attained at one of its vertices.  The equality
system is solved for its pivot variables, the remaining free coordinates
are homogenised, and the Motzkin double-description method adds one
inequality at a time, keeping extreme rays as primitive integer vectors.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

Row = Sequence[int | Fraction] | Mapping[int, int | Fraction]


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _int_row(values: Sequence[Fraction]) -> list[int]:
    scale = lcm(*(Fraction(v).denominator for v in values)) if values else 1
    return [int(Fraction(v) * scale) for v in values]


def _double_description(constraints: list[list[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of ``{z : a.z >= 0 for a in constraints}``; the first ``dim``
    constraints must be the coordinate nonnegativities ``z_k >= 0``."""
    rays: list[tuple[int, ...]] = []
    zero: list[int] = []
    for k in range(dim):
        e = [0] * dim
        e[k] = 1
        rays.append(tuple(e))
        zero.append(((1 << dim) - 1) & ~(1 << k))

    for ci in range(dim, len(constraints)):
        a = constraints[ci]
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            zero = [z | (1 << ci) if vals[i] == 0 else z for i, z in enumerate(zero)]
            continue
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zero = [zero[i] for i in pos] + [zero[i] | (1 << ci) for i in zer]
        for p in pos:
            for q in neg:
                common = zero[p] & zero[q]
                if bin(common).count("1") < dim - 2:
                    continue
                if any(
                    k != p and k != q and common & ~zero[k] == 0 for k in range(len(rays))
                ):
                    continue
                vp, vq = vals[p], vals[q]
                combo = [vp * y - vq * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(_primitive(combo))
                new_zero.append(common | (1 << ci))
        rays, zero = new_rays, new_zero
    return rays


def enumerate_vertices(
    a_eq: Sequence[Row], b_eq: Sequence[int | Fraction], n: int
) -> tuple[list[list[Fraction]], bool]:
    """All vertices of ``{x >= 0 : a_eq x = b_eq}`` and whether the set is bounded."""
    dense = []
    for row, rhs in zip(a_eq, b_eq):
        if isinstance(row, Mapping):
            full = [Fraction(0)] * n
            for j, v in row.items():
                full[j] = Fraction(v)
        else:
            full = [Fraction(v) for v in row]
        dense.append(full + [Fraction(rhs)])
    reduced, pivots = _rref(dense, n + 1)
    if n in pivots:
        return [], True  # inconsistent equalities
    reduced = reduced[: len(pivots)]
    free = [j for j in range(n) if j not in pivots]
    dim = len(free) + 1  # homogenising coordinate first

    # z = (t, y): t >= 0, y >= 0, and t*b'_i - N_i . y >= 0 for each pivot row
    constraints: list[list[int]] = []
    for k in range(dim):
        e = [0] * dim
        e[k] = 1
        constraints.append(e)
    for row in reduced:
        constraints.append(_int_row([row[n]] + [-row[j] for j in free]))

    rays = _double_description(constraints, dim)
    bounded = all(r[0] > 0 for r in rays)
    vertices = []
    seen = set()
    for r in rays:
        t = r[0]
        if t <= 0:
            continue
        y = [Fraction(v, t) for v in r[1:]]
        x = [Fraction(0)] * n
        for j, val in zip(free, y):
            x[j] = val
        for row, pj in zip(reduced, pivots):
            x[pj] = row[n] - sum((row[j] * val for j, val in zip(free, y)), Fraction(0))
        key = tuple(x)
        if key not in seen:
            seen.add(key)
            vertices.append(x)
    return vertices, bounded


def max_over_vertices(
    c: Sequence[int | Fraction], a_eq: Sequence[Row], b_eq: Sequence[int | Fraction]
) -> Fraction | None:
    verts, bounded = enumerate_vertices(a_eq, b_eq, len(c))
    if not verts or not bounded:
        return None
    return max(sum((Fraction(ci) * xi for ci, xi in zip(c, v)), Fraction(0)) for v in verts)
