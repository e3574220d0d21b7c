"""Global joint distributions for chordal commutation graphs.

``construct_jpd`` glues the context tables along a clique tree: the joint
probability is the product of clique marginals divided by the product of
separator marginals.  ``jpd_exists_lp`` is an independent check that works on
any graph: it asks a linear program whether some distribution over full
assignments reproduces every context table.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algorithms import is_chordal, is_perfect_elimination_order, maximal_cliques
from .behavior import Assignment, Behavior, JointDistribution, Table, bits_to_key, marginalize
from .errors import NotChordalError, ValidationError, check_size
from .graph import CommutationGraph
from .simplex import maximize

JPD_LP_LIMIT = 20


@dataclass
class CliqueTree:
    """Clique forest: ``parent[i]`` is -1 for roots; parents precede children."""

    nodes: list[tuple[str, ...]]
    parent: list[int]

    @property
    def edges(self) -> list[tuple[int, int, tuple[str, ...]]]:
        out = []
        for child, par in enumerate(self.parent):
            if par >= 0:
                sep = tuple(v for v in self.nodes[child] if v in self.nodes[par])
                out.append((par, child, sep))
        return out

    def separator(self, child: int) -> tuple[str, ...]:
        par = self.parent[child]
        if par < 0:
            return ()
        return tuple(v for v in self.nodes[child] if v in self.nodes[par])

    def path(self, i: int, j: int) -> list[int]:
        def to_root(k: int) -> list[int]:
            out = [k]
            while self.parent[out[-1]] >= 0:
                out.append(self.parent[out[-1]])
            return out

        up_i, up_j = to_root(i), to_root(j)
        if up_i[-1] != up_j[-1]:
            return []
        common = set(up_i) & set(up_j)
        meet = next(k for k in up_i if k in common)
        return up_i[: up_i.index(meet) + 1] + up_j[: up_j.index(meet)][::-1]

    def has_running_intersection(self) -> bool:
        for i in range(len(self.nodes)):
            for j in range(i + 1, len(self.nodes)):
                shared = set(self.nodes[i]) & set(self.nodes[j])
                if not shared:
                    continue
                route = self.path(i, j)
                if not route:
                    return False
                if any(not shared <= set(self.nodes[k]) for k in route):
                    return False
        return True


def _require_peo(g: CommutationGraph, order: Sequence[str] | None) -> list[str]:
    if order is None:
        res = is_chordal(g)
        if not res.chordal:
            raise NotChordalError(
                f"graph is not chordal: induced cycle {'-'.join(res.witness_cycle or ())}"
            )
        return list(res.elimination_order or ())
    order = list(order)
    if not is_perfect_elimination_order(g, order):
        raise NotChordalError("given order is not a perfect elimination ordering of the graph")
    return order


def clique_tree(g: CommutationGraph, order: Sequence[str] | None = None) -> CliqueTree:
    """Clique tree (forest, if disconnected) of a chordal graph, built from a PEO.

    Vertices are added in reverse elimination order.  A vertex whose earlier
    neighbours are exactly an existing clique extends it; otherwise it opens a
    new clique hung below the first clique containing those neighbours.
    """
    peo = _require_peo(g, order)
    cliques: list[set[str]] = []
    parent: list[int] = []
    done: set[str] = set()
    for v in reversed(peo):
        madj = g.neighbors(v) & done
        done.add(v)
        if not madj:
            cliques.append({v})
            parent.append(-1)
            continue
        same = next((k for k, c in enumerate(cliques) if c == madj), -1)
        if same >= 0:
            cliques[same].add(v)
            continue
        host = next(k for k, c in enumerate(cliques) if madj <= c)
        cliques.append(madj | {v})
        parent.append(host)
    return CliqueTree([g.sort_vertices(c) for c in cliques], parent)


def _tables_by_clique(g: CommutationGraph, b: Behavior) -> dict[frozenset, Table]:
    cliques = {frozenset(c): c for c in maximal_cliques(g)}
    given = {frozenset(c): i for i, c in enumerate(b.contexts)}
    missing = [sorted(cliques[k], key=g.index) for k in cliques if k not in given]
    extra = [sorted(k, key=g.index) for k in given if k not in cliques]
    if missing or extra:
        raise ValidationError(
            f"behavior contexts must be the maximal cliques of the graph; "
            f"missing {missing}, unexpected {extra}"
        )
    out = {}
    for key, clique in cliques.items():
        i = given[key]
        ctx = b.contexts[i]
        out[key] = marginalize(b.tables[i], [ctx.index(v) for v in clique])
    return out


def construct_jpd(
    g: CommutationGraph, b: Behavior, order: Sequence[str] | None = None
) -> JointDistribution:
    """Joint distribution on a chordal graph reproducing every context of ``b``."""
    tree = clique_tree(g, order)
    b.validate(g)
    tables = _tables_by_clique(g, b)
    pos = {v: i for i, v in enumerate(g.vertices)}

    partial: list[tuple[dict[str, int], Fraction]] = [({}, Fraction(1))]
    for k, node in enumerate(tree.nodes):
        table = tables[frozenset(node)]
        sep = tree.separator(k)
        sep_idx = [node.index(v) for v in sep]
        sep_marg = marginalize(table, sep_idx)
        by_sep: dict[Assignment, list[tuple[Assignment, Fraction]]] = {}
        for bits, p in table.items():
            if p:
                by_sep.setdefault(tuple(bits[i] for i in sep_idx), []).append((bits, p))
        grown: list[tuple[dict[str, int], Fraction]] = []
        for assign, q in partial:
            key = tuple(assign[v] for v in sep)
            denom = sep_marg.get(key, Fraction(0))
            if not denom:
                # 0/0 = 0, but a live partial assignment means the parent saw mass here
                if q:
                    raise ValidationError(
                        f"zero-probability separator {list(sep)}={bits_to_key(key)} "
                        f"with nonzero numerator at clique {list(node)}"
                    )
                continue
            for bits, p in by_sep.get(key, ()):
                nxt = dict(assign)
                nxt.update(zip(node, bits))
                grown.append((nxt, q * p / denom))
        partial = grown

    support: dict[Assignment, Fraction] = {}
    for assign, p in partial:
        key = tuple(assign[v] for v in sorted(assign, key=pos.__getitem__))
        support[key] = support.get(key, Fraction(0)) + p
    return JointDistribution(tuple(g.vertices), support)


@dataclass
class MarginalReport:
    passed: bool
    checked: int
    mismatches: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "contexts_checked": self.checked, "mismatches": self.mismatches}


def verify_marginals(jpd: JointDistribution, b: Behavior) -> MarginalReport:
    """Exact comparison of every context table with the joint's marginal."""
    known = set(jpd.vertices)
    for ctx in b.contexts:
        if not set(ctx) <= known:
            raise ValidationError(
                f"context {list(ctx)} uses vertices absent from the joint distribution"
            )
    mismatches = []
    for ctx, table in zip(b.contexts, b.tables):
        got = jpd.marginal(ctx)
        for key in sorted(set(got) | set(table)):
            want = table.get(key, Fraction(0))
            have = got.get(key, Fraction(0))
            if want != have:
                mismatches.append(
                    {
                        "context": list(ctx),
                        "assignment": bits_to_key(key),
                        "expected": str(want),
                        "actual": str(have),
                    }
                )
    return MarginalReport(not mismatches, len(b.contexts), mismatches)


def _support_columns(vertices: Sequence[str], b: Behavior) -> list[Assignment]:
    """Full assignments whose restriction to every context has positive probability."""
    pos = {v: i for i, v in enumerate(vertices)}
    supports = [
        (tuple(pos[v] for v in ctx), {k for k, p in t.items() if p})
        for ctx, t in zip(b.contexts, b.tables)
    ]
    # a context is checked once its last vertex (in order) has been assigned
    closing: dict[int, list[int]] = {}
    for k, (idx, _) in enumerate(supports):
        if idx:
            closing.setdefault(max(idx), []).append(k)

    out: list[Assignment] = []
    bits = [0] * len(vertices)

    def rec(i: int) -> None:
        if i == len(vertices):
            out.append(tuple(bits))
            return
        for b_ in (0, 1):
            bits[i] = b_
            if all(tuple(bits[j] for j in supports[k][0]) in supports[k][1] for k in closing.get(i, ())):
                rec(i + 1)

    rec(0)
    return out


def find_jpd_lp(g: CommutationGraph, b: Behavior) -> JointDistribution | None:
    """Exact LP search for any joint distribution reproducing ``b``; None if none exists.

    Variables are weights on full assignments.  Assignments that hit a
    zero-probability table entry are fixed to 0 up front (a nonnegative sum
    equal to 0 forces every term to 0), which keeps the LP small.
    """
    check_size(len(g), JPD_LP_LIMIT, "jpd_exists_lp")
    for ctx in b.contexts:
        for v in ctx:
            if v not in g:
                raise ValidationError(f"behavior context {list(ctx)} uses unknown vertex {v!r}")
    for ctx, t in zip(b.contexts, b.tables):
        if any(p < 0 for p in t.values()) or sum(t.values(), Fraction(0)) != 1:
            raise ValidationError(f"context {list(ctx)} is not a probability table")

    vertices = tuple(g.vertices)
    cols = _support_columns(vertices, b)
    if not cols:
        return None if b.contexts else JointDistribution(vertices, {(0,) * len(vertices): Fraction(1)})
    pos = {v: i for i, v in enumerate(vertices)}
    rows, rhs = [], []
    for ctx, table in zip(b.contexts, b.tables):
        idx = [pos[v] for v in ctx]
        for key, p in table.items():
            if p:
                rows.append({j: 1 for j, col in enumerate(cols) if tuple(col[i] for i in idx) == key})
                rhs.append(p)
    res = maximize([0] * len(cols), rows, rhs)
    if not res.feasible:
        return None
    assert res.x is not None
    return JointDistribution(vertices, {col: w for col, w in zip(cols, res.x) if w})


def jpd_exists_lp(g: CommutationGraph, b: Behavior) -> bool:
    return find_jpd_lp(g, b) is not None
