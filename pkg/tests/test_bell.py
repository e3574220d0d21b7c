from __future__ import annotations

import random
from fractions import Fraction

import pytest

from monogamy.algorithms import is_chordal, maximal_cliques
from monogamy.bell import (
    BellScenario,
    bell_jpd_factorize,
    build_bell_graph,
    chsh,
    context_with,
    expression_value,
    local_max,
    ns_lp_max,
    pr_box_behavior,
    random_ns_behavior,
    rearranged_chsh_pair,
    restrict_behavior,
)
from monogamy.behavior import Behavior
from monogamy.errors import SizeLimitError, ValidationError
from monogamy.jpd import jpd_exists_lp, verify_marginals

F = Fraction
SUB = ("A1", "A2", "B1", "C2")


@pytest.fixture(scope="module")
def tri():
    return BellScenario.standard(3)


def _pair(s):
    return [chsh("A1", "A2", "B1", "B2"), chsh("A1", "A2", "C1", "C2")]


def test_graph_shapes(tri):
    g = build_bell_graph(tri)
    assert len(g) == 6 and g.num_edges() == 12
    assert len(maximal_cliques(g)) == 8
    assert not g.exclusive_edges()
    two = build_bell_graph(BellScenario.standard(2))
    assert two.num_edges() == 4 and len(maximal_cliques(two)) == 4
    assert build_bell_graph(BellScenario.standard(1)).num_edges() == 0


def test_scenario_validation(tri):
    with pytest.raises(ValidationError):
        BellScenario({"A": ("X",), "B": ("X",)})
    with pytest.raises(ValidationError, match="incompatible"):
        ns_lp_max(tri, [chsh("A1", "A2", "A1", "B2")])
    with pytest.raises(SizeLimitError):
        ns_lp_max(BellScenario.standard(2, 5), [chsh("A1", "A2", "B1", "B2")])


def test_single_chsh():
    s = BellScenario.standard(2)
    e = [chsh("A1", "A2", "B1", "B2")]
    assert ns_lp_max(s, e).value == 4
    assert local_max(s, e)[0] == 2


def test_shared_settings_pair(tri):
    assert ns_lp_max(tri, _pair(tri)).value == 4
    assert local_max(tri, _pair(tri))[0] == 4
    for e in rearranged_chsh_pair(tri):
        assert ns_lp_max(tri, [e]).value == 2


def test_unshared_settings_pair():
    s = BellScenario({"A": ("A1", "A2", "A3", "A4"), "B": ("B1", "B2"), "C": ("C1", "C2")})
    pair = [chsh("A1", "A2", "B1", "B2"), chsh("A3", "A4", "C1", "C2")]
    assert ns_lp_max(s, pair).value == 8


def test_rearrangement_identity_on_random_behaviors(tri):
    rng = random.Random(5)
    left = _pair(tri)
    right = rearranged_chsh_pair(tri)
    for _ in range(200):
        b = random_ns_behavior(tri, rng)
        b.validate(build_bell_graph(tri))
        # read each side from different contexts; no-signaling makes them agree
        lhs = sum(expression_value(b, e, context_with(b, "C1")) for e in left)
        rhs = sum(expression_value(b, e, context_with(b, "B2")) for e in right)
        assert lhs == rhs
        assert all(expression_value(b, e) <= 2 for e in right)


def test_pr_box_saturates_one_chsh(tri):
    b = pr_box_behavior(tri, "A", "B")
    assert expression_value(b, chsh("A1", "A2", "B1", "B2")) == 4
    assert expression_value(b, chsh("A1", "A2", "C1", "C2")) == 0


def test_sub_scenario_is_chordal(tri):
    g = build_bell_graph(tri)
    assert not is_chordal(g).chordal
    sub, _ = restrict_behavior(SUB, pr_box_behavior(tri, "A", "B"))
    assert is_chordal(sub).chordal
    assert is_chordal(g.induced_subgraph(SUB)).chordal


def test_factorize_product_and_deterministic(tri):
    contexts = maximal_cliques(build_bell_graph(tri))
    uniform = Behavior(
        tuple(contexts), [{bits: F(1, 8) for bits in _all_bits(3)} for _ in contexts]
    )
    jpd = bell_jpd_factorize(SUB, uniform)
    assert set(jpd.support.values()) == {F(1, 16)} and len(jpd.support) == 16

    point = {"A1": 1, "A2": 0, "B1": 1, "B2": 0, "C1": 0, "C2": 1}
    det = Behavior.from_mixture(contexts, [(F(1), point)])
    jpd = bell_jpd_factorize(SUB, det)
    assert jpd.prob({m: point[m] for m in SUB}) == 1


def test_factorize_pr_box(tri):
    b = pr_box_behavior(tri, "A", "B")
    g, restricted = restrict_behavior(SUB, b)
    jpd = bell_jpd_factorize(SUB, b)
    assert verify_marginals(jpd, restricted).passed
    assert jpd_exists_lp(g, restricted)
    assert all(expression_value(b, e) <= 2 for e in rearranged_chsh_pair(tri))


def test_factorize_random(tri):
    rng = random.Random(6)
    for _ in range(30):
        b = random_ns_behavior(tri, rng)
        _, restricted = restrict_behavior(SUB, b)
        assert verify_marginals(bell_jpd_factorize(SUB, b), restricted).passed


def _all_bits(n):
    return [tuple((k >> i) & 1 for i in range(n)) for k in range(2**n)]
