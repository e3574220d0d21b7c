from __future__ import annotations

import random
from fractions import Fraction

import pytest

from monogamy.algorithms import maximal_cliques
from monogamy.errors import SizeLimitError, ValidationError
from monogamy.fixtures import PENTAGON_A, fig1, pentagon, two_pentagons_complete
from monogamy.graph import CommutationGraph, complete_graph
from monogamy.ndpolytope import (
    EventObjective,
    LinearObjective,
    admissible_assignments,
    build_nd_lp,
    classical_max,
    lp_maximize,
    nd_max,
    objective_value,
)
from monogamy.vertex_enum import max_over_vertices
from oracles import random_chordal_graph, random_graph

F = Fraction


def test_pentagon_model_size():
    model = build_nd_lp(pentagon(), LinearObjective.unit(PENTAGON_A))
    assert model.contexts == maximal_cliques(pentagon())
    assert model.n_variables == 15
    assert model.n_normalization == 5
    assert all(len(admissible_assignments(pentagon(), c)) == 3 for c in model.contexts)


def test_single_non_exclusive_edge():
    g = CommutationGraph(["a", "b"], [("a", "b", False)])
    model = build_nd_lp(g, LinearObjective.unit(g.vertices))
    assert model.n_variables == 4 and model.n_normalization == 1 and model.n_consistency == 0


def test_fig1_contexts_include_triangles():
    model = build_nd_lp(fig1(), LinearObjective.unit(fig1().vertices))
    assert ("A1", "A'1", "A'2") in model.contexts and ("A4", "A5", "A'5") in model.contexts
    assert model.n_consistency > 0


@pytest.mark.parametrize(
    "build, nd, classical",
    [
        (pentagon, F(5, 2), F(2)),
        (fig1, F(4), F(4)),
        (two_pentagons_complete, F(5, 2), F(2)),
    ],
)
def test_fixture_maxima(build, nd, classical):
    g = build()
    obj = LinearObjective.unit(g.vertices)
    out = nd_max(g, obj)
    assert out.value == nd
    out.witness.validate(g)
    assert objective_value(obj, out.witness) == nd
    value, assignment = classical_max(g, obj)
    assert value == classical
    assert sum(assignment.values()) == classical
    assert all(not (assignment[u] and assignment[v]) for u, v in g.exclusive_edges())


def test_fig1_classical_witness_is_the_known_one():
    value, _ = classical_max(fig1(), LinearObjective.unit(fig1().vertices))
    ones = {"A2", "A4", "A'2", "A'4"}
    assert value == 4
    assert fig1().is_independent(ones)


def test_zero_objective():
    g = pentagon()
    out = nd_max(g, LinearObjective({}))
    assert out.value == 0
    assert classical_max(g, LinearObjective({}))[0] == 0


def test_unknown_vertex_in_objective():
    with pytest.raises(ValidationError):
        nd_max(pentagon(), LinearObjective({"Z": 1}))
    with pytest.raises(ValidationError):
        LinearObjective.from_dict({"weights": {"A1": "x"}})


def test_objective_json_round_trip():
    obj = LinearObjective({"A1": F(1, 2), "A2": F(3)})
    assert LinearObjective.from_dict(obj.to_dict()) == obj
    assert obj.to_dict() == {"weights": {"A1": "1/2", "A2": "3"}}


def test_event_objective_matches_linear():
    g = pentagon()
    lin = LinearObjective.unit(g.vertices)
    ev = EventObjective(tuple(((v,), (1,), F(1)) for v in g.vertices))
    assert nd_max(g, ev).value == nd_max(g, lin).value
    assert classical_max(g, ev)[0] == classical_max(g, lin)[0]


def _random_weights(rng, g):
    return LinearObjective({v: F(rng.randint(-2, 4), rng.randint(1, 3)) for v in g.vertices})


def test_nd_at_least_classical_and_equal_on_chordal():
    rng = random.Random(13)
    for _ in range(40):
        g = random_graph(rng, rng.randint(1, 7))
        obj = _random_weights(rng, g)
        out = nd_max(g, obj)
        out.witness.validate(g)
        assert objective_value(obj, out.witness) == out.value
        assert out.value >= classical_max(g, obj)[0]
    for _ in range(60):
        g = random_chordal_graph(rng, rng.randint(1, 8))
        obj = _random_weights(rng, g)
        assert nd_max(g, obj).value == classical_max(g, obj)[0]


def test_against_double_description():
    rng = random.Random(17)
    graphs = [pentagon(), complete_graph("abc")] + [random_graph(rng, rng.randint(2, 6)) for _ in range(12)]
    for g in graphs:
        obj = _random_weights(rng, g)
        model = build_nd_lp(g, obj)
        assert lp_maximize(model).value == max_over_vertices(model.cost, model.rows, model.rhs)


def test_fig1_against_double_description():
    g = fig1()
    model = build_nd_lp(g, LinearObjective.unit(g.vertices))
    assert max_over_vertices(model.cost, model.rows, model.rhs) == 4


def test_classical_size_limit(monkeypatch):
    monkeypatch.setenv("MONOGAMY_SIZE_LIMIT", "3")
    with pytest.raises(SizeLimitError):
        classical_max(pentagon(), LinearObjective.unit(PENTAGON_A))
