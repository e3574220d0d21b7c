"""Bell-CHSH scenarios as commutation graphs.

Measurements have outcomes +1/-1, stored as bits (0 -> +1, 1 -> -1) so the
no-disturbance machinery is reused unchanged; for spatially separated
parties it is exactly no-signaling.  Correlators are
``<X Y ...> = sum (-1)^(x + y + ...) p(x, y, ...)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Callable, Mapping, Sequence

from .algorithms import maximal_cliques
from .behavior import Behavior, JointDistribution
from .errors import SizeLimitError, ValidationError
from .graph import CommutationGraph
from .jpd import construct_jpd
from .ndpolytope import EventObjective, LPOutcome, classical_max, lp_maximize, build_nd_lp

MAX_PARTIES = 3
MAX_SETTINGS = 4


@dataclass(frozen=True)
class BellScenario:
    """Parties and their measurement labels; each measurement is +-1 valued."""

    settings: Mapping[str, tuple[str, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "settings", {p: tuple(ms) for p, ms in self.settings.items()})
        seen: set[str] = set()
        for ms in self.settings.values():
            for m in ms:
                if m in seen:
                    raise ValidationError(f"measurement {m!r} belongs to two parties")
                seen.add(m)

    @property
    def parties(self) -> tuple[str, ...]:
        return tuple(self.settings)

    @property
    def measurements(self) -> tuple[str, ...]:
        return tuple(m for ms in self.settings.values() for m in ms)

    def party_of(self, m: str) -> str:
        for p, ms in self.settings.items():
            if m in ms:
                return p
        raise ValidationError(f"unknown measurement {m!r}")

    @classmethod
    def standard(cls, n_parties: int, n_settings: int = 2) -> BellScenario:
        names = "ABCDEFGH"[:n_parties]
        return cls({p: tuple(f"{p}{k}" for k in range(1, n_settings + 1)) for p in names})


@dataclass(frozen=True)
class BellExpression:
    """Linear combination of correlators; each term is (measurements, coefficient)."""

    terms: tuple[tuple[tuple[str, ...], Fraction], ...]

    def __add__(self, other: BellExpression) -> BellExpression:
        return BellExpression(self.terms + other.terms)

    def check(self, s: BellScenario) -> None:
        for ms, _ in self.terms:
            parties = [s.party_of(m) for m in ms]
            if len(set(parties)) != len(parties):
                raise ValidationError(f"correlator {ms} mixes incompatible measurements of one party")

    def events(self) -> list[tuple[tuple[str, ...], tuple[int, ...], Fraction]]:
        out = []
        for ms, coeff in self.terms:
            for bits in product((0, 1), repeat=len(ms)):
                sign = -1 if sum(bits) % 2 else 1
                out.append((tuple(ms), bits, sign * Fraction(coeff)))
        return out


def chsh(a1: str, a2: str, b1: str, b2: str) -> BellExpression:
    """<a1 b1> + <a1 b2> + <a2 b1> - <a2 b2>."""
    one = Fraction(1)
    return BellExpression((((a1, b1), one), ((a1, b2), one), ((a2, b1), one), ((a2, b2), -one)))


def build_bell_graph(s: BellScenario) -> CommutationGraph:
    """Complete multipartite graph: different parties compatible, never exclusive."""
    ms = s.measurements
    edges = [
        (a, b, False)
        for i, a in enumerate(ms)
        for b in ms[i + 1 :]
        if s.party_of(a) != s.party_of(b)
    ]
    return CommutationGraph(ms, edges)


def _objective(exprs: Sequence[BellExpression]) -> EventObjective:
    return EventObjective(tuple(e for expr in exprs for e in expr.events()))


def _check_size(s: BellScenario) -> None:
    if len(s.parties) > MAX_PARTIES or any(len(ms) > MAX_SETTINGS for ms in s.settings.values()):
        raise SizeLimitError(
            f"Bell LP supports at most {MAX_PARTIES} parties with {MAX_SETTINGS} settings each"
        )


def ns_lp_max(s: BellScenario, exprs: Sequence[BellExpression]) -> LPOutcome:
    """Maximum of the summed expressions over the no-signaling polytope."""
    _check_size(s)
    for e in exprs:
        e.check(s)
    return lp_maximize(build_nd_lp(build_bell_graph(s), _objective(exprs)))


def local_max(s: BellScenario, exprs: Sequence[BellExpression]) -> tuple[Fraction, dict[str, int]]:
    """Maximum over deterministic local strategies (the local realistic bound)."""
    for e in exprs:
        e.check(s)
    return classical_max(build_bell_graph(s), _objective(exprs))


def correlator(b: Behavior, ms: Sequence[str], context: int | None = None) -> Fraction:
    marg = b.marginal(tuple(ms), context)
    return sum(((-1) ** sum(k) * p for k, p in marg.items()), Fraction(0))


def expression_value(
    b: Behavior,
    expr: BellExpression,
    pick: Callable[[tuple[str, ...]], int] | None = None,
) -> Fraction:
    """Evaluate ``expr`` on ``b``; ``pick`` chooses the context each correlator is read from."""
    total = Fraction(0)
    for ms, coeff in expr.terms:
        ctx = pick(tuple(ms)) if pick else None
        total += Fraction(coeff) * correlator(b, ms, ctx)
    return total


def context_with(b: Behavior, *extra: str) -> Callable[[tuple[str, ...]], int]:
    """Context picker: the first context holding the correlator's measurements plus ``extra``."""

    def pick(ms: tuple[str, ...]) -> int:
        want = set(ms) | set(extra)
        for k, ctx in enumerate(b.contexts):
            if want <= set(ctx):
                return k
        # fall back to the term alone when the extra vertex is one of its own parties
        return b.containing(ms)

    return pick


def rearranged_chsh_pair(s: BellScenario) -> tuple[BellExpression, BellExpression]:
    """CHSH(A1, A2, B1, C2) and CHSH(A1, A2, C1, B2) for the standard 3-party scenario."""
    (a1, a2), (b1, b2), (c1, c2) = (s.settings[p] for p in s.parties)
    return chsh(a1, a2, b1, c2), chsh(a1, a2, c1, b2)


# ---------------------------------------------------------------------------
# Joint distribution on a chordal sub-scenario
# ---------------------------------------------------------------------------


def restrict_behavior(sub: Sequence[str], b: Behavior) -> tuple[CommutationGraph, Behavior]:
    """Compatibility graph induced on ``sub`` and the behavior on its maximal cliques."""
    sub = tuple(sub)
    known = set(b.vertices)
    unknown = [v for v in sub if v not in known]
    if unknown:
        raise ValidationError(f"vertices {unknown} do not occur in the behavior")
    edges = [
        (u, v, False)
        for i, u in enumerate(sub)
        for v in sub[i + 1 :]
        if any(u in ctx and v in ctx for ctx in b.contexts)
    ]
    g = CommutationGraph(sub, edges)
    cliques = maximal_cliques(g)
    tables = [b.marginal(c) for c in cliques]
    return g, Behavior(tuple(cliques), tables)


def bell_jpd_factorize(sub: Sequence[str], b: Behavior) -> JointDistribution:
    """Joint distribution on ``sub``, e.g. p(a1,b1,c2) p(a2,b1,c2) / p(b1,c2) for {A1,A2,B1,C2}."""
    g, restricted = restrict_behavior(sub, b)
    return construct_jpd(g, restricted)


# ---------------------------------------------------------------------------
# Random no-signaling behaviors (for tests and demos)
# ---------------------------------------------------------------------------


def _pr_component(s: BellScenario, rng: random.Random) -> Callable[[dict[str, int]], Fraction]:
    parties = list(s.parties)
    x_party, y_party = rng.sample(parties, 2)
    flips = {m: rng.randint(0, 1) for m in s.measurements}
    sx, sy, f = rng.randint(0, 1), rng.randint(0, 1), rng.randint(0, 1)
    others = {m: rng.randint(0, 1) for m in s.measurements if s.party_of(m) not in (x_party, y_party)}
    x_of = {m: i % 2 for i, m in enumerate(s.settings[x_party])}
    y_of = {m: i % 2 for i, m in enumerate(s.settings[y_party])}

    def prob(assign: dict[str, int]) -> Fraction:
        xm = next(m for m in assign if m in x_of)
        ym = next(m for m in assign if m in y_of)
        a, bb = assign[xm] ^ flips[xm], assign[ym] ^ flips[ym]
        if a ^ bb != ((x_of[xm] ^ sx) & (y_of[ym] ^ sy)) ^ f:
            return Fraction(0)
        rest = [m for m in assign if m not in (xm, ym)]
        if any(assign[m] != others[m] for m in rest):
            return Fraction(0)
        return Fraction(1, 2)

    return prob


def _local_component(s: BellScenario, rng: random.Random) -> Callable[[dict[str, int]], Fraction]:
    det = {m: rng.randint(0, 1) for m in s.measurements}
    return lambda assign: Fraction(int(all(assign[m] == det[m] for m in assign)))


def random_ns_behavior(s: BellScenario, rng: random.Random, max_terms: int = 4) -> Behavior:
    """Random mixture of PR boxes (with a local third party) and local strategies."""
    contexts = maximal_cliques(build_bell_graph(s))
    k = rng.randint(1, max_terms)
    comps = []
    for _ in range(k):
        make = _pr_component if len(s.parties) >= 2 and rng.random() < 0.6 else _local_component
        comps.append((rng.randint(1, 9), make(s, rng)))
    total = sum(w for w, _ in comps)
    tables = []
    for ctx in contexts:
        table = {}
        for bits in product((0, 1), repeat=len(ctx)):
            assign = dict(zip(ctx, bits))
            p = sum((Fraction(w, total) * comp(assign) for w, comp in comps), Fraction(0))
            if p:
                table[bits] = p
        tables.append(table)
    return Behavior(tuple(contexts), tables)


def pr_box_behavior(s: BellScenario, x_party: str, y_party: str) -> Behavior:
    """PR box between two parties; any remaining party outputs uniformly at random."""
    contexts = maximal_cliques(build_bell_graph(s))
    x_of = {m: i % 2 for i, m in enumerate(s.settings[x_party])}
    y_of = {m: i % 2 for i, m in enumerate(s.settings[y_party])}
    tables = []
    for ctx in contexts:
        xm = next(m for m in ctx if m in x_of)
        ym = next(m for m in ctx if m in y_of)
        free = len(ctx) - 2
        table = {}
        for bits in product((0, 1), repeat=len(ctx)):
            assign = dict(zip(ctx, bits))
            if assign[xm] ^ assign[ym] == x_of[xm] & y_of[ym]:
                table[bits] = Fraction(1, 2 * 2**free)
        tables.append(table)
    return Behavior(tuple(contexts), tables)
