"""Monogamy verdicts from the clique cover number, and the two-pentagon scan.

A family of KCBS-type inequalities (vertex sets with noncontextual bounds
R_k) is monogamous by vertex decomposition into chordal parts exactly when
the clique cover number of the whole graph equals the sum of the bounds.
A strictly smaller cover number means the sum is already capped for
noncontextual models, so the monogamy is not a genuinely contextual one.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .algorithms import (
    CliqueCover,
    _clique_cover_masks,
    chordal_decomposition_search,
    clique_cover_number,
    independence_number,
    is_chordal,
)
from .behavior import format_fraction
from .errors import ValidationError, check_size
from .fixtures import FIG1_CROSS_EDGES, PENTAGON_A, PENTAGON_B, two_pentagons
from .graph import CommutationGraph
from .ndpolytope import LinearObjective, classical_max, nd_max

GENUINE = "monogamous-genuine"
TRIVIAL = "monogamous-trivial"
NOT_BY_METHOD = "not-monogamous-by-method"

EQUIVALENCE_LIMIT = 20


@dataclass(frozen=True)
class InequalitySpec:
    """``sum_{v in vertices} p(v = 1) <= bound``."""

    vertices: tuple[str, ...]
    bound: int

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "bound": self.bound}


def parse_specs(data: Mapping | Sequence, g: CommutationGraph | None = None) -> list[InequalitySpec]:
    """Read ``{"inequalities": [{"vertices": [...], "bound": R}, ...]}``.

    A missing bound is filled in from the independence number of the induced
    subgraph, which needs ``g``.
    """
    items = data.get("inequalities") if isinstance(data, Mapping) else data
    if not isinstance(items, list) or not items:
        raise ValidationError("specs JSON needs a non-empty 'inequalities' list")
    out = []
    for k, item in enumerate(items):
        if not isinstance(item, Mapping) or not isinstance(item.get("vertices"), list):
            raise ValidationError(f"inequalities[{k}]: needs a 'vertices' list")
        bound = item.get("bound")
        if bound is None:
            if g is None:
                raise ValidationError(f"inequalities[{k}]: missing 'bound'")
            bound = independence_number(g.induced_subgraph(item["vertices"]))[0]
        if not isinstance(bound, int) or isinstance(bound, bool) or bound < 0:
            raise ValidationError(f"inequalities[{k}]: 'bound' must be a natural number")
        out.append(InequalitySpec(tuple(item["vertices"]), bound))
    return out


def kcbs_spec(g: CommutationGraph, vertices: Iterable[str]) -> InequalitySpec:
    vertices = tuple(vertices)
    return InequalitySpec(vertices, independence_number(g.induced_subgraph(vertices))[0])


def validate_specs(g: CommutationGraph, specs: Sequence[InequalitySpec]) -> None:
    seen: dict[str, int] = {}
    for k, spec in enumerate(specs):
        for v in spec.vertices:
            if v not in g:
                raise ValidationError(f"inequality {k}: unknown vertex {v!r}")
            if v in seen:
                raise ValidationError(
                    f"inequalities {seen[v]} and {k} share vertex {v!r}; specs must partition V"
                )
            seen[v] = k
    missing = [v for v in g.vertices if v not in seen]
    if missing:
        raise ValidationError(f"specs do not cover vertices {missing}; specs must partition V")
    for k, spec in enumerate(specs):
        alpha = independence_number(g.induced_subgraph(spec.vertices))[0]
        if alpha != spec.bound:
            raise ValidationError(
                f"inequality {k}: bound {spec.bound} differs from the independence number "
                f"{alpha} of its induced subgraph"
            )


@dataclass
class MonogamyVerdict:
    clique_cover_number: int
    target: int
    classification: str
    certificate: CliqueCover | None
    nd_max: Fraction
    classical_max: Fraction

    @property
    def monogamous(self) -> bool:
        return self.classification != NOT_BY_METHOD

    def to_dict(self) -> dict:
        return {
            "clique_cover_number": self.clique_cover_number,
            "target": self.target,
            "classification": self.classification,
            "certificate": self.certificate.to_list() if self.certificate else None,
            "nd_max": format_fraction(self.nd_max),
            "classical_max": format_fraction(self.classical_max),
        }


def classify(cover_number: int, target: int) -> str:
    if cover_number == target:
        return GENUINE
    if cover_number < target:
        return TRIVIAL
    return NOT_BY_METHOD


def check_monogamy(g: CommutationGraph, specs: Sequence[InequalitySpec]) -> MonogamyVerdict:
    """Clique-cover verdict plus the no-disturbance and classical maxima of the unit sum.

    The classification reads the graph as an exclusivity graph: each clique
    contributes at most 1 to the sum only when its edges are exclusive.  For
    graphs with non-exclusive edges the reported ``nd_max`` may exceed the
    target even when the label says monogamous.
    """
    validate_specs(g, specs)
    target = sum(s.bound for s in specs)
    cover_number, cover = clique_cover_number(g)
    label = classify(cover_number, target)
    unit = LinearObjective.unit(g.vertices)
    return MonogamyVerdict(
        clique_cover_number=cover_number,
        target=target,
        classification=label,
        certificate=cover if label != NOT_BY_METHOD else None,
        nd_max=nd_max(g, unit).value,
        classical_max=classical_max(g, unit)[0],
    )


def decomposition_equivalence_check(
    g: CommutationGraph, specs: Sequence[InequalitySpec] | int
) -> bool:
    """Run the chordal-partition search and the clique cover number side by side.

    True when they agree: the search succeeds exactly when the cover number is
    at most the target (and the target does not exceed |V|), and any partition
    found consists of chordal parts whose independence numbers, equivalently
    clique cover numbers, add up to the target.
    """
    check_size(len(g), EQUIVALENCE_LIMIT, "decomposition_equivalence_check")
    target = specs if isinstance(specs, int) else sum(s.bound for s in specs)
    cover_number, _ = clique_cover_number(g)
    parts = chordal_decomposition_search(g, target)
    expected = cover_number <= target <= len(g)
    if (parts is not None) != expected:
        return False
    if parts is None:
        return True
    if sorted(v for p in parts for v in p) != sorted(g.vertices):
        return False
    total_alpha = total_cover = 0
    for p in parts:
        sub = g.induced_subgraph(p)
        if not is_chordal(sub).chordal:
            return False
        total_alpha += independence_number(sub)[0]
        total_cover += clique_cover_number(sub)[0]
    return total_alpha == total_cover == target


# ---------------------------------------------------------------------------
# Minimality of the fig1 configuration among two-pentagon graphs
# ---------------------------------------------------------------------------

CROSS_EDGES: tuple[tuple[str, str], ...] = tuple((a, b) for a in PENTAGON_A for b in PENTAGON_B)
SCAN_TARGET = 4


@dataclass
class ScanLevel:
    k: int
    candidates: int
    distribution: dict[int, int]
    hits: list[tuple[tuple[str, str], ...]] = field(default_factory=list)

    @property
    def hit_count(self) -> int:
        return self.distribution.get(SCAN_TARGET, 0)

    def to_dict(self) -> dict:
        values = sorted(self.distribution)
        return {
            "k": self.k,
            "candidates": self.candidates,
            "with_cover_number_4": self.hit_count,
            "min_cover_number": values[0] if values else None,
            "max_cover_number": values[-1] if values else None,
            "distribution": {str(v): self.distribution[v] for v in values},
            "witnesses": [[list(e) for e in hit] for hit in self.hits],
        }


@dataclass
class MinimalityReport:
    exclusive: bool
    levels: list[ScanLevel]

    def level(self, k: int) -> ScanLevel:
        return next(lv for lv in self.levels if lv.k == k)

    @property
    def minimal_k(self) -> int | None:
        return next((lv.k for lv in self.levels if lv.hit_count), None)

    def contains(self, edges: Iterable[tuple[str, str]]) -> bool:
        want = frozenset(frozenset(e) for e in edges)
        for lv in self.levels:
            for hit in lv.hits:
                if frozenset(frozenset(e) for e in hit) == want:
                    return True
        return False

    def to_dict(self) -> dict:
        return {
            "exclusive_cross_edges": self.exclusive,
            "target_cover_number": SCAN_TARGET,
            "minimal_k": self.minimal_k,
            "contains_fig1_edges": self.contains(FIG1_CROSS_EDGES),
            "levels": [lv.to_dict() for lv in self.levels],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def minimality_scan(k_max: int, exclusive: bool = True) -> MinimalityReport:
    """Clique cover number of every two-pentagon graph with k labelled cross edges.

    The pentagons are treated as labelled (no symmetry reduction).  Cover
    numbers do not depend on exclusivity; the flag only changes how the
    cross edges are marked in the graphs the scan builds.
    """
    if not 1 <= k_max <= 5:
        raise ValidationError("k_max must be between 1 and 5")
    base = two_pentagons((), exclusive)
    n = len(base)
    base_adj = list(base.masks)
    idx = [(base.index(a), base.index(b)) for a, b in CROSS_EDGES]
    levels = []
    for k in range(1, k_max + 1):
        counts: Counter[int] = Counter()
        hits = []
        total = 0
        for combo in combinations(range(len(CROSS_EDGES)), k):
            adj = base_adj[:]
            for e in combo:
                u, v = idx[e]
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            cover = len(_clique_cover_masks(adj, n))
            counts[cover] += 1
            total += 1
            if cover == SCAN_TARGET:
                hits.append(tuple(CROSS_EDGES[e] for e in combo))
        levels.append(ScanLevel(k, total, dict(counts), hits))
    return MinimalityReport(exclusive, levels)
