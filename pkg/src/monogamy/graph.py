"""Commutation graphs: vertices are measurements, edges are joint measurability.

An edge may additionally be flagged *exclusive*, meaning the two 0/1
measurements can never both return 1.  Vertex order is insertion order and
every algorithm in the package breaks ties by it.
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping

from .errors import ValidationError

Edge = frozenset


class CommutationGraph:
    """Simple undirected graph with an exclusivity flag on each edge."""

    __slots__ = ("vertices", "_index", "_exclusive", "_adj", "_masks")

    def __init__(
        self,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str] | tuple[str, str, bool]] = (),
        exclusive: bool = True,
    ):
        verts = tuple(vertices)
        index: dict[str, int] = {}
        for v in verts:
            if not isinstance(v, str) or not v:
                raise ValidationError(f"vertex labels must be non-empty strings, got {v!r}")
            if v in index:
                raise ValidationError(f"duplicate vertex label {v!r}")
            index[v] = len(index)
        self.vertices = verts
        self._index = index
        self._exclusive: dict[frozenset, bool] = {}
        self._adj: dict[str, set[str]] = {v: set() for v in verts}
        for k, e in enumerate(edges):
            if len(e) == 3:
                u, v, ex = e  # type: ignore[misc]
            else:
                (u, v), ex = e, exclusive
            self._add_edge(u, v, bool(ex), where=f"edge #{k}")
        self._masks: tuple[int, ...] | None = None

    def _add_edge(self, u: str, v: str, ex: bool, where: str) -> None:
        for w in (u, v):
            if w not in self._index:
                raise ValidationError(f"{where}: edge references unknown vertex {w!r}")
        if u == v:
            raise ValidationError(f"{where}: self-loop on {u!r}")
        key = frozenset((u, v))
        if key in self._exclusive:
            raise ValidationError(f"{where}: duplicate edge {u!r}-{v!r}")
        self._exclusive[key] = ex
        self._adj[u].add(v)
        self._adj[v].add(u)

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __repr__(self) -> str:
        return f"CommutationGraph(|V|={len(self.vertices)}, |E|={len(self._exclusive)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommutationGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._exclusive == other._exclusive

    def __hash__(self) -> int:
        return hash((self.vertices, frozenset(self._exclusive.items())))

    def index(self, v: str) -> int:
        return self._index[v]

    def neighbors(self, v: str) -> set[str]:
        return self._adj[v]

    def degree(self, v: str) -> int:
        return len(self._adj[v])

    def has_edge(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self._exclusive

    def is_exclusive(self, u: str, v: str) -> bool:
        return self._exclusive[frozenset((u, v))]

    @property
    def edges(self) -> list[tuple[str, str]]:
        """Edges as ``(u, v)`` with ``u`` before ``v`` in vertex order, sorted."""
        out = []
        for key in self._exclusive:
            u, v = sorted(key, key=self._index.__getitem__)
            out.append((u, v))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def iter_edges(self) -> Iterator[tuple[str, str, bool]]:
        for u, v in self.edges:
            yield u, v, self._exclusive[frozenset((u, v))]

    def num_edges(self) -> int:
        return len(self._exclusive)

    def exclusive_edges(self) -> list[tuple[str, str]]:
        return [(u, v) for u, v, ex in self.iter_edges() if ex]

    def is_clique(self, vs: Iterable[str]) -> bool:
        vs = list(vs)
        return all(self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :])

    def is_independent(self, vs: Iterable[str]) -> bool:
        vs = list(vs)
        return not any(self.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :])

    def sort_vertices(self, vs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(vs, key=self._index.__getitem__))

    # -- bitmask view used by the exact algorithms -------------------------

    @property
    def masks(self) -> tuple[int, ...]:
        """Adjacency bitmask of every vertex, indexed by vertex position."""
        if self._masks is None:
            m = [0] * len(self.vertices)
            for key in self._exclusive:
                u, v = (self._index[w] for w in key)
                m[u] |= 1 << v
                m[v] |= 1 << u
            self._masks = tuple(m)
        return self._masks

    def to_mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self._index[v]
        return m

    def from_mask(self, mask: int) -> tuple[str, ...]:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.vertices[i])
            mask >>= 1
            i += 1
        return tuple(out)

    # -- derived graphs ----------------------------------------------------

    def complement(self) -> CommutationGraph:
        """Graph on the same vertices with exactly the missing pairs; edges non-exclusive."""
        vs = self.vertices
        edges = [
            (a, b, False)
            for i, a in enumerate(vs)
            for b in vs[i + 1 :]
            if not self.has_edge(a, b)
        ]
        return CommutationGraph(vs, edges)

    def induced_subgraph(self, subset: Iterable[str]) -> CommutationGraph:
        """Induced subgraph, keeping the parent's vertex order and exclusivity flags."""
        subset = set(subset)
        unknown = [v for v in subset if v not in self._index]
        if unknown:
            raise ValidationError(f"unknown vertices in subset: {sorted(unknown)}")
        vs = [v for v in self.vertices if v in subset]
        edges = [(u, v, ex) for u, v, ex in self.iter_edges() if u in subset and v in subset]
        return CommutationGraph(vs, edges)

    def with_edges(self, extra: Iterable[tuple[str, str, bool]]) -> CommutationGraph:
        return CommutationGraph(self.vertices, list(self.iter_edges()) + list(extra))

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [{"u": u, "v": v, "exclusive": ex} for u, v, ex in self.iter_edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def disjoint_union(*graphs: CommutationGraph) -> CommutationGraph:
    vertices: list[str] = []
    edges: list[tuple[str, str, bool]] = []
    for g in graphs:
        vertices.extend(g.vertices)
        edges.extend(g.iter_edges())
    return CommutationGraph(vertices, edges)


def graph_from_dict(data: Mapping) -> CommutationGraph:
    if not isinstance(data, Mapping):
        raise ValidationError("graph JSON must be an object with 'vertices' and 'edges'")
    if "vertices" not in data:
        raise ValidationError("graph JSON is missing 'vertices'")
    vertices = data["vertices"]
    if not isinstance(vertices, list):
        raise ValidationError("'vertices' must be a list of labels")
    seen: set = set()
    for k, v in enumerate(vertices):
        if v in seen:
            raise ValidationError(f"vertices[{k}]: duplicate vertex label {v!r}")
        seen.add(v)
    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise ValidationError("'edges' must be a list")
    edges = []
    for k, e in enumerate(raw_edges):
        if isinstance(e, Mapping):
            if "u" not in e or "v" not in e:
                raise ValidationError(f"edges[{k}]: needs 'u' and 'v'")
            ex = e.get("exclusive", True)
            if not isinstance(ex, bool):
                raise ValidationError(f"edges[{k}]: 'exclusive' must be a boolean")
            edges.append((e["u"], e["v"], ex))
        elif isinstance(e, list) and len(e) == 2:
            edges.append((e[0], e[1], True))
        else:
            raise ValidationError(f"edges[{k}]: expected {{'u','v','exclusive'}} or a [u, v] pair")
    g = CommutationGraph(vertices, [])
    for k, (u, v, ex) in enumerate(edges):
        g._add_edge(u, v, ex, where=f"edges[{k}]")
    return g


def parse_graph(text: str) -> CommutationGraph:
    """Parse the graph JSON format; exclusivity defaults to true when omitted."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"graph file is not valid JSON: {exc}") from None
    return graph_from_dict(data)


def cycle_graph(labels: Iterable[str], exclusive: bool = True) -> CommutationGraph:
    labels = list(labels)
    n = len(labels)
    edges = [(labels[i], labels[(i + 1) % n], exclusive) for i in range(n)] if n > 2 else []
    if n == 2:
        edges = [(labels[0], labels[1], exclusive)]
    return CommutationGraph(labels, edges)


def complete_graph(labels: Iterable[str], exclusive: bool = True) -> CommutationGraph:
    labels = list(labels)
    return CommutationGraph(
        labels, [(a, b, exclusive) for i, a in enumerate(labels) for b in labels[i + 1 :]]
    )
