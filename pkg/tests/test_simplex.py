from __future__ import annotations

import random
from fractions import Fraction

import pytest

from monogamy.simplex import is_feasible, maximize
from monogamy.vertex_enum import enumerate_vertices, max_over_vertices


def test_simple_optimum():
    # max x + y  s.t.  x + 2y + s = 4,  3x + y + t = 6
    res = maximize([1, 1, 0, 0], [[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6])
    assert res.status == "optimal"
    assert res.value == Fraction(14, 5)
    assert res.x[:2] == [Fraction(8, 5), Fraction(6, 5)]


def test_rational_coefficients():
    res = maximize([Fraction(1, 3), 0], [[Fraction(1, 2), Fraction(1, 7)]], [Fraction(5, 6)])
    assert res.value == Fraction(5, 9)


def test_infeasible_and_unbounded():
    assert maximize([1], [[1], [1]], [1, 2]).status == "infeasible"
    assert maximize([1, 0], [[1, -1]], [0]).status == "unbounded"
    assert not maximize([0], [[1]], [-1]).feasible


def test_redundant_rows_and_degeneracy():
    rows = [[1, 1, 0], [1, 1, 0], [0, 1, 1]]
    res = maximize([0, 0, 1], rows, [1, 1, 0])
    assert res.status == "optimal" and res.value == 0
    ok, x = is_feasible(rows, [1, 1, 0], 3)
    assert ok and x[0] + x[1] == 1


def test_sparse_rows_accepted():
    res = maximize([1, 2, 0], [{0: 1, 1: 1, 2: 1}], [3])
    assert res.value == 6


def _random_lp(rng: random.Random):
    n = rng.randint(1, 6)
    m = rng.randint(1, 4)
    a = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(-2, 6) for _ in range(m)]
    c = [rng.randint(-3, 3) for _ in range(n)]
    # a bounding row keeps most instances bounded so both oracles apply
    a.append([1] * n + [1])
    for row in a[:-1]:
        row.append(0)
    c.append(0)
    b.append(rng.randint(1, 8))
    return c, a, b


def test_against_vertex_enumeration():
    rng = random.Random(7)
    compared = 0
    for _ in range(200):
        c, a, b = _random_lp(rng)
        res = maximize(c, a, b)
        expected = max_over_vertices(c, a, b)
        if expected is None:
            assert res.status == "infeasible"
            continue
        compared += 1
        assert res.status == "optimal" and res.value == expected
        assert all(sum(Fraction(p) * q for p, q in zip(row, res.x)) == rhs for row, rhs in zip(a, b))
        assert min(res.x) >= 0
    assert compared > 50


def test_vertex_enumeration_of_simplex():
    verts, bounded = enumerate_vertices([[1, 1, 1]], [1], 3)
    assert bounded
    assert sorted(map(tuple, verts)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_vertex_enumeration_unbounded_and_empty():
    _, bounded = enumerate_vertices([[1, -1]], [0], 2)
    assert not bounded
    verts, _ = enumerate_vertices([[1, 1], [1, 1]], [1, 2], 2)
    assert verts == []


def test_length_mismatch():
    with pytest.raises(ValueError):
        maximize([1], [[1]], [1, 2])
