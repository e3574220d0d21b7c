"""No-disturbance polytope: LP maxima and classical (deterministic) maxima.

A behavior is a table per context (maximal clique).  The no-disturbance
polytope is cut out by normalisation of each table and by equality of the
marginals any two contexts induce on their shared vertices.  Assignments
putting 1 on both ends of an exclusive edge are simply not variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .algorithms import maximal_cliques
from .behavior import Assignment, Behavior, forbidden, format_fraction, parse_fraction
from .errors import ValidationError, check_size
from .graph import CommutationGraph
from .simplex import maximize

CLASSICAL_LIMIT = 30
CLASSICAL_EVENT_LIMIT = 22

Event = tuple[tuple[str, ...], Assignment, Fraction]


@dataclass(frozen=True)
class LinearObjective:
    """``sum_v w_v * p(v = 1)``."""

    weights: Mapping[str, Fraction]

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", {v: Fraction(w) for v, w in self.weights.items()})

    @classmethod
    def unit(cls, vertices: Iterable[str]) -> LinearObjective:
        return cls({v: Fraction(1) for v in vertices})

    def events(self) -> list[Event]:
        return [((v,), (1,), w) for v, w in self.weights.items() if w]

    def check(self, g: CommutationGraph) -> None:
        unknown = [v for v in self.weights if v not in g]
        if unknown:
            raise ValidationError(f"objective weights reference unknown vertices {unknown}")

    def to_dict(self) -> dict:
        return {"weights": {v: format_fraction(w) for v, w in self.weights.items()}}

    @classmethod
    def from_dict(cls, data: Mapping) -> LinearObjective:
        if not isinstance(data, Mapping) or not isinstance(data.get("weights"), Mapping):
            raise ValidationError("objective JSON needs a 'weights' object")
        return cls({v: parse_fraction(w, f"weights[{v}]") for v, w in data["weights"].items()})


@dataclass(frozen=True)
class EventObjective:
    """``sum coeff * p(vertices = bits)`` over joint events inside contexts."""

    terms: tuple[Event, ...]

    def events(self) -> list[Event]:
        return [(tuple(vs), tuple(bits), Fraction(c)) for vs, bits, c in self.terms if c]

    def check(self, g: CommutationGraph) -> None:
        for vs, bits, _ in self.terms:
            if len(vs) != len(bits):
                raise ValidationError(f"event {vs} has {len(bits)} outcomes")
            for v in vs:
                if v not in g:
                    raise ValidationError(f"objective event uses unknown vertex {v!r}")


Objective = LinearObjective | EventObjective


@dataclass
class LPModel:
    graph: CommutationGraph
    contexts: list[tuple[str, ...]]
    columns: list[tuple[int, Assignment]]
    rows: list[dict[int, int]]
    rhs: list[int]
    cost: list[Fraction]
    n_normalization: int
    n_consistency: int
    objective: Objective = field(repr=False, default=None)  # type: ignore[assignment]

    @property
    def n_variables(self) -> int:
        return len(self.columns)

    def behavior(self, x: Sequence[Fraction]) -> Behavior:
        tables: list[dict[Assignment, Fraction]] = [{} for _ in self.contexts]
        for (k, bits), val in zip(self.columns, x):
            tables[k][bits] = Fraction(val)
        return Behavior(tuple(self.contexts), tables)


@dataclass
class LPOutcome:
    value: Fraction
    witness: Behavior

    def to_dict(self) -> dict:
        return {"value": format_fraction(self.value), "witness": self.witness.to_dict()}


def admissible_assignments(g: CommutationGraph, context: Sequence[str]) -> list[Assignment]:
    return [bits for bits in product((0, 1), repeat=len(context)) if not forbidden(bits, context, g)]


def _context_for(contexts: Sequence[Sequence[str]], vertices: Sequence[str]) -> int:
    need = set(vertices)
    for k, ctx in enumerate(contexts):
        if need <= set(ctx):
            return k
    raise ValidationError(f"objective event on {list(vertices)} is not inside any context")


def build_nd_lp(g: CommutationGraph, obj: Objective) -> LPModel:
    """Assemble the no-disturbance LP for maximising ``obj`` on ``g``."""
    obj.check(g)
    contexts = maximal_cliques(g)
    columns: list[tuple[int, Assignment]] = []
    cols_of: list[list[int]] = []
    for k, ctx in enumerate(contexts):
        idx = []
        for bits in admissible_assignments(g, ctx):
            idx.append(len(columns))
            columns.append((k, bits))
        cols_of.append(idx)

    rows: list[dict[int, int]] = []
    rhs: list[int] = []
    for k in range(len(contexts)):
        rows.append({j: 1 for j in cols_of[k]})
        rhs.append(1)
    n_norm = len(rows)

    # every context containing a shared set S is tied to the first such context
    shared_sets: list[tuple[str, ...]] = []
    seen: set[frozenset] = set()
    for i, ci in enumerate(contexts):
        for cj in contexts[i + 1 :]:
            s = frozenset(ci) & frozenset(cj)
            if s and s not in seen:
                seen.add(s)
                shared_sets.append(g.sort_vertices(s))
    for s in shared_sets:
        holders = [k for k, ctx in enumerate(contexts) if set(s) <= set(ctx)]
        first = holders[0]
        for other in holders[1:]:
            for key in product((0, 1), repeat=len(s)):
                row: dict[int, int] = {}
                for k, sign in ((first, 1), (other, -1)):
                    pos = [contexts[k].index(v) for v in s]
                    for j in cols_of[k]:
                        bits = columns[j][1]
                        if tuple(bits[p] for p in pos) == key:
                            row[j] = row.get(j, 0) + sign
                row = {j: v for j, v in row.items() if v}
                if row:
                    rows.append(row)
                    rhs.append(0)

    cost = [Fraction(0)] * len(columns)
    for vs, bits, coeff in obj.events():
        k = _context_for(contexts, vs)
        pos = [contexts[k].index(v) for v in vs]
        for j in cols_of[k]:
            if tuple(columns[j][1][p] for p in pos) == bits:
                cost[j] += coeff

    return LPModel(
        graph=g,
        contexts=contexts,
        columns=columns,
        rows=rows,
        rhs=rhs,
        cost=cost,
        n_normalization=n_norm,
        n_consistency=len(rows) - n_norm,
        objective=obj,
    )


def lp_maximize(model: LPModel) -> LPOutcome:
    """Exact maximum over the no-disturbance polytope with an attaining behavior."""
    res = maximize(model.cost, model.rows, model.rhs)
    if res.status != "optimal":
        raise RuntimeError(f"no-disturbance LP unexpectedly {res.status}")
    assert res.x is not None and res.value is not None
    return LPOutcome(res.value, model.behavior(res.x))


def objective_value(obj: Objective, b: Behavior) -> Fraction:
    total = Fraction(0)
    for vs, bits, coeff in obj.events():
        total += coeff * b.marginal(vs).get(bits, Fraction(0))
    return total


def nd_max(g: CommutationGraph, obj: Objective) -> LPOutcome:
    return lp_maximize(build_nd_lp(g, obj))


# ---------------------------------------------------------------------------
# Classical maxima over deterministic assignments
# ---------------------------------------------------------------------------


def _classical_linear(g: CommutationGraph, obj: LinearObjective) -> tuple[Fraction, dict[str, int]]:
    check_size(len(g), CLASSICAL_LIMIT, "classical_max")
    w = [obj.weights.get(v, Fraction(0)) for v in g.vertices]
    excl = [0] * len(g)
    for u, v in g.exclusive_edges():
        excl[g.index(u)] |= 1 << g.index(v)
        excl[g.index(v)] |= 1 << g.index(u)
    positive = [i for i in range(len(g)) if w[i] > 0]
    suffix = [Fraction(0)] * (len(positive) + 1)
    for k in range(len(positive) - 1, -1, -1):
        suffix[k] = suffix[k + 1] + w[positive[k]]
    best: list = [Fraction(-1), 0]

    def rec(k: int, chosen: int, blocked: int, total: Fraction) -> None:
        if total + suffix[k] <= best[0]:
            return
        if k == len(positive):
            best[0], best[1] = total, chosen
            return
        i = positive[k]
        if not blocked >> i & 1:
            rec(k + 1, chosen | 1 << i, blocked | excl[i], total + w[i])
        rec(k + 1, chosen, blocked, total)

    rec(0, 0, 0, Fraction(0))
    value = max(best[0], Fraction(0))
    chosen = best[1]
    return value, {v: chosen >> i & 1 for i, v in enumerate(g.vertices)}


def _classical_events(g: CommutationGraph, obj: Objective) -> tuple[Fraction, dict[str, int]]:
    check_size(len(g), CLASSICAL_EVENT_LIMIT, "classical_max")
    events = obj.events()
    vs = list(g.vertices)
    excl_prev = [[u for u in g.neighbors(v) if g.is_exclusive(u, v) and g.index(u) < i] for i, v in enumerate(vs)]
    best: list = [None, None]
    assign: dict[str, int] = {}

    def rec(i: int) -> None:
        if i == len(vs):
            total = sum(
                (c for evs, bits, c in events if all(assign[v] == b for v, b in zip(evs, bits))),
                Fraction(0),
            )
            if best[0] is None or total > best[0]:
                best[0], best[1] = total, dict(assign)
            return
        v = vs[i]
        for bit in (0, 1):
            if bit and any(assign[u] for u in excl_prev[i]):
                continue
            assign[v] = bit
            rec(i + 1)
        del assign[v]

    rec(0)
    return best[0], best[1]


def classical_max(g: CommutationGraph, obj: Objective) -> tuple[Fraction, dict[str, int]]:
    """Maximum over deterministic 0/1 assignments that respect exclusivity."""
    obj.check(g)
    if isinstance(obj, LinearObjective):
        return _classical_linear(g, obj)
    return _classical_events(g, obj)
