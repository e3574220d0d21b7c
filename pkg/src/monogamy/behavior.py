"""Behaviors (per-context outcome tables) and global joint distributions.

Outcomes are 0/1.  Assignments are tuples of bits in the vertex order of the
context (or of the whole distribution); probabilities are exact Fractions.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import InconsistentBehaviorError, ValidationError
from .graph import CommutationGraph

Assignment = tuple[int, ...]
Table = dict[Assignment, Fraction]


def parse_fraction(value: object, where: str = "") -> Fraction:
    if isinstance(value, bool):
        raise ValidationError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise ValidationError(f"{where}: expected a rational like \"1/2\", got {value!r}")


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def bits_to_key(bits: Assignment) -> str:
    return "".join(str(b) for b in bits)


def key_to_bits(key: str, width: int, where: str = "") -> Assignment:
    if len(key) != width or any(ch not in "01" for ch in key):
        raise ValidationError(f"{where}: assignment key {key!r} must be {width} bits of 0/1")
    return tuple(int(ch) for ch in key)


def marginalize(table: Mapping[Assignment, Fraction], positions: Sequence[int]) -> Table:
    out: Table = {}
    for bits, p in table.items():
        if p:
            key = tuple(bits[i] for i in positions)
            out[key] = out.get(key, Fraction(0)) + p
    return out


def _tables_equal(a: Mapping[Assignment, Fraction], b: Mapping[Assignment, Fraction]) -> bool:
    keys = set(a) | set(b)
    return all(a.get(k, 0) == b.get(k, 0) for k in keys)


def forbidden(bits: Assignment, context: Sequence[str], g: CommutationGraph) -> bool:
    """True if the assignment puts 1 on both ends of an exclusive edge."""
    ones = [v for v, b in zip(context, bits) if b]
    return any(
        g.has_edge(a, c) and g.is_exclusive(a, c) for i, a in enumerate(ones) for c in ones[i + 1 :]
    )


@dataclass
class Behavior:
    """Outcome distribution for each context; absent assignments have probability 0."""

    contexts: tuple[tuple[str, ...], ...]
    tables: list[Table]

    def __post_init__(self) -> None:
        self.contexts = tuple(tuple(c) for c in self.contexts)
        if len(self.contexts) != len(self.tables):
            raise ValidationError("one table is needed per context")
        self.tables = [{tuple(k): Fraction(v) for k, v in t.items()} for t in self.tables]

    @property
    def vertices(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for c in self.contexts:
            for v in c:
                seen.setdefault(v)
        return tuple(seen)

    def context_index(self, vertices: Iterable[str]) -> int:
        target = frozenset(vertices)
        for i, c in enumerate(self.contexts):
            if frozenset(c) == target:
                return i
        raise KeyError(f"no context {sorted(target)}")

    def containing(self, vertices: Iterable[str]) -> int:
        """Index of the first context containing every given vertex."""
        need = set(vertices)
        for i, c in enumerate(self.contexts):
            if need <= set(c):
                return i
        raise ValidationError(f"no context contains {sorted(need)}")

    def marginal(self, vertices: Sequence[str], context: int | None = None) -> Table:
        """Distribution of ``vertices`` (in the given order) read off one context."""
        k = self.containing(vertices) if context is None else context
        ctx = self.contexts[k]
        if not set(vertices) <= set(ctx):
            raise ValidationError(f"context {ctx} does not contain {list(vertices)}")
        return marginalize(self.tables[k], [ctx.index(v) for v in vertices])

    def prob_one(self, v: str, context: int | None = None) -> Fraction:
        return self.marginal((v,), context).get((1,), Fraction(0))

    def value(self, weights: Mapping[str, Fraction]) -> Fraction:
        return sum((Fraction(w) * self.prob_one(v) for v, w in weights.items()), Fraction(0))

    # -- validation --------------------------------------------------------

    def disturbance(self) -> list[tuple[int, int, Assignment]]:
        """All (context i, context j, shared assignment) where marginals differ."""
        out = []
        for i, ci in enumerate(self.contexts):
            for j in range(i + 1, len(self.contexts)):
                cj = self.contexts[j]
                shared = [v for v in ci if v in cj]
                if not shared:
                    continue
                mi = marginalize(self.tables[i], [ci.index(v) for v in shared])
                mj = marginalize(self.tables[j], [cj.index(v) for v in shared])
                for key in sorted(set(mi) | set(mj)):
                    if mi.get(key, 0) != mj.get(key, 0):
                        out.append((i, j, key))
        return out

    def validate(self, g: CommutationGraph | None = None) -> None:
        """Raise unless tables are distributions, respect exclusivity and no-disturbance."""
        for ctx, table in zip(self.contexts, self.tables):
            if len(set(ctx)) != len(ctx):
                raise ValidationError(f"context {list(ctx)} repeats a vertex")
            for bits, p in table.items():
                if len(bits) != len(ctx) or any(b not in (0, 1) for b in bits):
                    raise ValidationError(f"context {list(ctx)}: bad assignment {bits}")
                if p < 0:
                    raise ValidationError(f"context {list(ctx)}: negative probability at {bits_to_key(bits)}")
                if g is not None and p and forbidden(bits, ctx, g):
                    raise ValidationError(
                        f"context {list(ctx)}: assignment {bits_to_key(bits)} violates exclusivity"
                    )
            total = sum(table.values(), Fraction(0))
            if total != 1:
                raise ValidationError(f"context {list(ctx)}: probabilities sum to {total}, not 1")
            if g is not None:
                for v in ctx:
                    if v not in g:
                        raise ValidationError(f"context {list(ctx)}: unknown vertex {v!r}")
                if not g.is_clique(ctx):
                    raise ValidationError(f"context {list(ctx)} is not a clique of the graph")
        bad = self.disturbance()
        if bad:
            i, j, key = bad[0]
            ci, cj = self.contexts[i], self.contexts[j]
            shared = [v for v in ci if v in cj]
            raise InconsistentBehaviorError(
                f"no-disturbance violated between contexts {list(ci)} and {list(cj)}: "
                f"marginal of {shared} at {bits_to_key(key)} differs",
                contexts=(ci, cj),
                assignment=key,
            )

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "contexts": [
                {
                    "vertices": list(ctx),
                    "table": {
                        bits_to_key(k): format_fraction(v) for k, v in sorted(table.items()) if v
                    },
                }
                for ctx, table in zip(self.contexts, self.tables)
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> Behavior:
        if not isinstance(data, Mapping) or not isinstance(data.get("contexts"), list):
            raise ValidationError("behavior JSON needs a 'contexts' list")
        contexts, tables = [], []
        for k, entry in enumerate(data["contexts"]):
            where = f"contexts[{k}]"
            if not isinstance(entry, Mapping) or "vertices" not in entry or "table" not in entry:
                raise ValidationError(f"{where}: needs 'vertices' and 'table'")
            verts = entry["vertices"]
            if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
                raise ValidationError(f"{where}: 'vertices' must be a list of labels")
            if not isinstance(entry["table"], Mapping):
                raise ValidationError(f"{where}: 'table' must map bit strings to rationals")
            table = {
                key_to_bits(key, len(verts), where): parse_fraction(p, f"{where}.table[{key}]")
                for key, p in entry["table"].items()
            }
            contexts.append(tuple(verts))
            tables.append(table)
        return cls(tuple(contexts), tables)

    @classmethod
    def from_json(cls, text: str) -> Behavior:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"behavior file is not valid JSON: {exc}") from None
        return cls.from_dict(data)

    # -- construction helpers ----------------------------------------------

    @classmethod
    def from_mixture(
        cls,
        contexts: Sequence[Sequence[str]],
        mixture: Iterable[tuple[Fraction, Mapping[str, int]]],
    ) -> Behavior:
        """Behavior induced by a convex mixture of global deterministic assignments."""
        contexts = tuple(tuple(c) for c in contexts)
        tables: list[Table] = [{} for _ in contexts]
        for w, assignment in mixture:
            w = Fraction(w)
            for table, ctx in zip(tables, contexts):
                key = tuple(int(assignment[v]) for v in ctx)
                table[key] = table.get(key, Fraction(0)) + w
        return cls(contexts, tables)

    @classmethod
    def from_joint(cls, contexts: Sequence[Sequence[str]], jpd: JointDistribution) -> Behavior:
        contexts = tuple(tuple(c) for c in contexts)
        return cls(contexts, [jpd.marginal(c) for c in contexts])


@dataclass
class JointDistribution:
    """Distribution over full 0/1 assignments to ``vertices``."""

    vertices: tuple[str, ...]
    support: dict[Assignment, Fraction] = field(default_factory=dict)

    def total(self) -> Fraction:
        return sum(self.support.values(), Fraction(0))

    def marginal(self, vertices: Sequence[str]) -> Table:
        pos = {v: i for i, v in enumerate(self.vertices)}
        try:
            idx = [pos[v] for v in vertices]
        except KeyError as exc:
            raise ValidationError(f"vertex {exc.args[0]!r} is not in the distribution") from None
        return marginalize(self.support, idx)

    def prob(self, assignment: Mapping[str, int]) -> Fraction:
        key = tuple(int(assignment[v]) for v in self.vertices)
        return self.support.get(key, Fraction(0))

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "support": {
                bits_to_key(k): format_fraction(v) for k, v in sorted(self.support.items()) if v
            },
        }


def uniform_joint(vertices: Sequence[str]) -> JointDistribution:
    n = len(vertices)
    p = Fraction(1, 2**n)
    return JointDistribution(tuple(vertices), {bits: p for bits in product((0, 1), repeat=n)})


def random_admissible_assignment(g: CommutationGraph, rng: random.Random) -> dict[str, int]:
    """Random 0/1 assignment with no exclusive edge carrying two 1s."""
    out: dict[str, int] = {}
    order = list(g.vertices)
    rng.shuffle(order)
    for v in order:
        bit = rng.randint(0, 1)
        if bit and any(out.get(u) == 1 and g.is_exclusive(u, v) for u in g.neighbors(v)):
            bit = 0
        out[v] = bit
    return out


def random_classical_behavior(
    g: CommutationGraph,
    contexts: Sequence[Sequence[str]],
    rng: random.Random,
    max_terms: int = 5,
    max_weight: int = 9,
) -> Behavior:
    """Random mixture of admissible deterministic assignments (always consistent)."""
    k = rng.randint(1, max_terms)
    raw = [rng.randint(1, max_weight) for _ in range(k)]
    total = sum(raw)
    mixture = [(Fraction(w, total), random_admissible_assignment(g, rng)) for w in raw]
    return Behavior.from_mixture(contexts, mixture)
