from __future__ import annotations

import json
import random
from math import comb

import pytest

from monogamy.algorithms import independence_number
from monogamy.analyzer import (
    CROSS_EDGES,
    GENUINE,
    NOT_BY_METHOD,
    TRIVIAL,
    InequalitySpec,
    check_monogamy,
    classify,
    decomposition_equivalence_check,
    kcbs_spec,
    minimality_scan,
    parse_specs,
)
from monogamy.errors import SizeLimitError, ValidationError
from monogamy.fixtures import (
    FIG1_CROSS_EDGES,
    PENTAGON_A,
    PENTAGON_B,
    data_path,
    fig1,
    fig3b,
    pentagon,
    two_pentagons,
    two_pentagons_complete,
)
from monogamy.graph import CommutationGraph, complete_graph
from oracles import random_chordal_graph, random_graph


def _two_kcbs(g):
    return [kcbs_spec(g, PENTAGON_A), kcbs_spec(g, PENTAGON_B)]


def test_classify():
    assert classify(4, 4) == GENUINE
    assert classify(3, 4) == TRIVIAL
    assert classify(5, 4) == NOT_BY_METHOD


def test_non_exclusive_clique_escapes_the_bound():
    # compatible but not exclusive: all four outcomes may be 1 together
    g = complete_graph("abcd", exclusive=False)
    v = check_monogamy(g, [kcbs_spec(g, "ab"), kcbs_spec(g, "cd")])
    assert v.classification == TRIVIAL and v.nd_max == 4 > v.target


def test_fig1_is_genuine():
    v = check_monogamy(fig1(), _two_kcbs(fig1()))
    assert (v.clique_cover_number, v.target, v.classification) == (4, 4, GENUINE)
    assert v.nd_max == 4 and v.classical_max == 4
    assert len(v.certificate) == 4 and v.certificate.is_valid_for(fig1())


def test_fig3b_is_genuine():
    v = check_monogamy(fig3b(), _two_kcbs(fig3b()))
    assert v.classification == GENUINE and v.nd_max == 4


def test_disjoint_pentagons_not_by_method():
    g = two_pentagons()
    v = check_monogamy(g, _two_kcbs(g))
    assert v.clique_cover_number == 6 and v.classification == NOT_BY_METHOD
    assert v.certificate is None
    assert v.nd_max == 5  # both inequalities can be violated at once


def test_complete_cross_edges_trivial():
    g = two_pentagons_complete()
    v = check_monogamy(g, _two_kcbs(g))
    assert v.clique_cover_number < 4 and v.classification == TRIVIAL
    assert v.classical_max == 2
    assert v.nd_max <= v.target


def test_verdict_json():
    d = check_monogamy(fig1(), _two_kcbs(fig1())).to_dict()
    assert d["nd_max"] == "4" and d["classification"] == GENUINE
    assert json.loads(json.dumps(d)) == d


def test_specs_parsing():
    data = json.loads(data_path("specs", "two-kcbs.json").read_text())
    specs = parse_specs(data)
    assert specs == [InequalitySpec(PENTAGON_A, 2), InequalitySpec(PENTAGON_B, 2)]
    filled = parse_specs({"inequalities": [{"vertices": list(PENTAGON_A)}]}, pentagon())
    assert filled[0].bound == 2
    for bad in ({}, {"inequalities": []}, {"inequalities": [{"bound": 2}]}):
        with pytest.raises(ValidationError):
            parse_specs(bad)
    with pytest.raises(ValidationError, match="natural"):
        parse_specs({"inequalities": [{"vertices": ["A1"], "bound": -1}]})


def test_specs_must_partition_and_match_alpha():
    g = fig1()
    with pytest.raises(ValidationError, match="partition"):
        check_monogamy(g, [kcbs_spec(g, PENTAGON_A)])
    with pytest.raises(ValidationError, match="share vertex"):
        check_monogamy(g, _two_kcbs(g) + [InequalitySpec(("A1",), 1)])
    with pytest.raises(ValidationError, match="independence number"):
        check_monogamy(g, [InequalitySpec(PENTAGON_A, 3), InequalitySpec(PENTAGON_B, 2)])
    with pytest.raises(ValidationError, match="unknown vertex"):
        check_monogamy(g, [InequalitySpec(("Q",), 1)])


def test_soundness_on_random_graphs():
    rng = random.Random(31)
    for _ in range(40):
        # the per-clique bound of 1 needs exclusive edges, as in KCBS graphs
        base = random_graph(rng, rng.randint(2, 9))
        g = CommutationGraph(base.vertices, [(u, v, True) for u, v in base.edges])
        vs = list(g.vertices)
        rng.shuffle(vs)
        cut = rng.randint(1, len(vs) - 1)
        specs = [kcbs_spec(g, vs[:cut]), kcbs_spec(g, vs[cut:])]
        v = check_monogamy(g, specs)
        assert v.target == sum(independence_number(g.induced_subgraph(s.vertices))[0] for s in specs)
        if v.monogamous:
            assert v.nd_max <= v.target
            assert len(v.certificate) == v.clique_cover_number
            assert v.certificate.is_valid_for(g)
        assert v.classical_max <= v.nd_max


# -- decomposition equivalence ---------------------------------------------------


def test_equivalence_examples():
    assert decomposition_equivalence_check(fig1(), _two_kcbs(fig1()))
    assert decomposition_equivalence_check(pentagon(), 2)
    assert decomposition_equivalence_check(complete_graph("abcd"), 1)


def test_equivalence_on_random_graphs():
    rng = random.Random(41)
    for i in range(200):
        g = random_graph(rng, rng.randint(1, 12)) if i % 2 else random_chordal_graph(rng, rng.randint(1, 12))
        target = rng.randint(0, len(g))
        assert decomposition_equivalence_check(g, target)
        if i % 2 == 0:
            assert decomposition_equivalence_check(g, independence_number(g)[0])


def test_equivalence_size_limit(monkeypatch):
    monkeypatch.setenv("MONOGAMY_SIZE_LIMIT", "4")
    with pytest.raises(SizeLimitError):
        decomposition_equivalence_check(pentagon(), 3)


# -- minimality scan ---------------------------------------------------------------


def test_scan_counts_and_distribution():
    report = minimality_scan(3)
    assert len(CROSS_EDGES) == 25
    for level in report.levels:
        assert level.candidates == comb(25, level.k)
        assert level.hit_count == 0
        assert min(level.distribution) >= 4
    assert report.minimal_k is None
    assert not report.contains(FIG1_CROSS_EDGES)


def test_scan_k4_finds_fig1():
    report = minimality_scan(4)
    level = report.level(4)
    assert level.hit_count > 0 and min(level.distribution) == 4
    assert report.minimal_k == 4
    assert report.contains(FIG1_CROSS_EDGES)
    assert report.to_dict()["contains_fig1_edges"] is True


def test_scan_non_exclusive_flag_and_bounds():
    report = minimality_scan(1, exclusive=False)
    assert report.exclusive is False and report.level(1).candidates == 25
    with pytest.raises(ValidationError):
        minimality_scan(6)
    with pytest.raises(ValidationError):
        minimality_scan(0)
