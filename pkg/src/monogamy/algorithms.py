"""Exact graph algorithms on commutation graphs.

All routines work on the bitmask view of a graph (bit ``i`` is the vertex at
position ``i``) and break ties by vertex position, so every witness is
reproducible.  Graphs here are tiny; the algorithms are exponential in the
worst case and guarded by size caps.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import check_size
from .graph import CommutationGraph

ALPHA_LIMIT = 64
DECOMPOSITION_LIMIT = 20


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# Chordality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChordalityResult:
    chordal: bool
    elimination_order: tuple[str, ...] | None = None
    witness_cycle: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "chordal": self.chordal,
            "elimination_order": list(self.elimination_order) if self.elimination_order else None,
            "witness_cycle": list(self.witness_cycle) if self.witness_cycle else None,
        }


def _mcs_order(adj: Sequence[int], within: int) -> list[int]:
    """Maximum cardinality search restricted to ``within``; returns the visit order."""
    weight = {v: 0 for v in _bits(within)}
    order: list[int] = []
    while weight:
        v = max(weight, key=lambda u: (weight[u], -u))
        del weight[v]
        order.append(v)
        for u in _bits(adj[v] & within):
            if u in weight:
                weight[u] += 1
    return order


def _is_peo(adj: Sequence[int], peo: Sequence[int]) -> bool:
    """Check that each vertex's later neighbours form a clique."""
    pos = {v: i for i, v in enumerate(peo)}
    later_mask = 0
    for v in reversed(peo):
        later = adj[v] & later_mask
        if later:
            # earliest later neighbour must be adjacent to all the others
            u = min(_bits(later), key=pos.__getitem__)
            rest = later & ~(1 << u)
            if rest & ~adj[u]:
                return False
        later_mask |= 1 << v
    return True


def _mask_is_chordal(adj: Sequence[int], within: int) -> bool:
    order = _mcs_order(adj, within)
    return _is_peo(adj, order[::-1])


def _find_induced_cycle(adj: Sequence[int], within: int) -> list[int] | None:
    """Return an induced cycle of length >= 4 inside ``within``, or None.

    For each vertex v and each non-adjacent pair of its neighbours u, w, a
    shortest u-w path avoiding the rest of N[v] closes a chordless cycle.
    """
    for v in _bits(within):
        nbrs = _bits(adj[v] & within)
        closed = (adj[v] & within) | (1 << v)
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                if adj[u] >> w & 1:
                    continue
                allowed = (within & ~closed) | (1 << u) | (1 << w)
                prev = {u: -1}
                queue = deque([u])
                while queue and w not in prev:
                    x = queue.popleft()
                    for y in _bits(adj[x] & allowed):
                        if y not in prev:
                            prev[y] = x
                            queue.append(y)
                if w in prev:
                    path = []
                    x = w
                    while x != -1:
                        path.append(x)
                        x = prev[x]
                    return [v] + path[::-1]
    return None


def is_chordal(g: CommutationGraph) -> ChordalityResult:
    """Decide chordality by maximum cardinality search and certify the answer."""
    adj = g.masks
    full = (1 << len(g)) - 1
    peo = _mcs_order(adj, full)[::-1]
    if _is_peo(adj, peo):
        return ChordalityResult(True, elimination_order=tuple(g.vertices[i] for i in peo))
    cycle = _find_induced_cycle(adj, full)
    assert cycle is not None, "MCS rejected the graph but no induced cycle exists"
    return ChordalityResult(False, witness_cycle=tuple(g.vertices[i] for i in cycle))


def is_perfect_elimination_order(g: CommutationGraph, order: Sequence[str]) -> bool:
    if sorted(order, key=g.index) != list(g.vertices):
        return False
    return _is_peo(g.masks, [g.index(v) for v in order])


def is_induced_cycle(g: CommutationGraph, cycle: Sequence[str]) -> bool:
    """True if ``cycle`` lists the vertices of a chordless cycle in order."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(cycle[i], cycle[j]) != consecutive:
                return False
    return True


# ---------------------------------------------------------------------------
# Independence number
# ---------------------------------------------------------------------------


def _greedy_clique_cover_size(adj: Sequence[int], cand: int) -> int:
    count = 0
    while cand:
        low = cand & -cand
        v = low.bit_length() - 1
        clique = low
        pool = cand & adj[v]
        while pool:
            lw = pool & -pool
            clique |= lw
            pool &= adj[lw.bit_length() - 1]
        cand &= ~clique
        count += 1
    return count


def _max_independent_set(adj: Sequence[int], within: int) -> int:
    """Lexicographically first maximum independent set inside ``within``."""
    best = [0, 0]  # size, mask

    def rec(cand: int, chosen: int, size: int) -> None:
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _greedy_clique_cover_size(adj, cand) <= best[0]:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rec(cand & ~adj[v] & ~low, chosen | low, size + 1)
        if adj[v] & cand:
            rec(cand & ~low, chosen, size)

    rec(within, 0, 0)
    return best[1]


def independence_number(g: CommutationGraph) -> tuple[int, tuple[str, ...]]:
    """Exact independence number with a maximum independent set as witness."""
    check_size(len(g), ALPHA_LIMIT, "independence_number")
    mask = _max_independent_set(g.masks, (1 << len(g)) - 1)
    return _popcount(mask), g.from_mask(mask)


# ---------------------------------------------------------------------------
# Clique cover via exact colouring of the complement
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CliqueCover:
    cliques: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.cliques)

    def is_valid_for(self, g: CommutationGraph) -> bool:
        seen: list[str] = [v for c in self.cliques for v in c]
        if len(seen) != len(set(seen)) or set(seen) != set(g.vertices):
            return False
        return all(c and g.is_clique(c) for c in self.cliques)

    def to_list(self) -> list[list[str]]:
        return [list(c) for c in self.cliques]


def _exact_coloring(adj: Sequence[int], n: int) -> list[int]:
    """Minimum colouring by DSATUR branch and bound; returns colour classes as masks."""
    if n == 0:
        return []
    full = (1 << n) - 1

    # lower bound: a greedy clique (one vertex per colour needed)
    lower = 0
    for start in range(n):
        clique, pool = 1 << start, adj[start]
        while pool:
            lw = pool & -pool
            clique |= lw
            pool &= adj[lw.bit_length() - 1]
        lower = max(lower, _popcount(clique))

    best: list = [n + 1, None]
    classes: list[int] = []

    def rec(uncolored: int) -> bool:
        k = len(classes)
        if not uncolored:
            if k < best[0]:
                best[0], best[1] = k, list(classes)
            return k <= lower
        if k >= best[0]:
            return False
        # DSATUR choice: most distinct neighbouring colours, then degree, then position
        pick, key = -1, None
        for v in _bits(uncolored):
            sat = sum(1 for c in classes if adj[v] & c)
            cand_key = (sat, _popcount(adj[v] & uncolored), -v)
            if key is None or cand_key > key:
                pick, key = v, cand_key
        bit = 1 << pick
        rest = uncolored & ~bit
        for i in range(k):
            if not adj[pick] & classes[i]:
                classes[i] |= bit
                done = rec(rest)
                classes[i] &= ~bit
                if done:
                    return True
        if k + 1 < best[0]:
            classes.append(bit)
            done = rec(rest)
            classes.pop()
            if done:
                return True
        return False

    rec(full)
    return best[1]


def _complement_masks(adj: Sequence[int], n: int) -> list[int]:
    full = (1 << n) - 1
    return [full & ~adj[v] & ~(1 << v) for v in range(n)]


def _clique_cover_masks(adj: Sequence[int], n: int) -> list[int]:
    classes = _exact_coloring(_complement_masks(adj, n), n)
    return sorted(classes, key=lambda m: m & -m)


def clique_cover_number(g: CommutationGraph) -> tuple[int, CliqueCover]:
    """Minimum number of cliques partitioning the vertices, with one optimal cover."""
    check_size(len(g), ALPHA_LIMIT, "clique_cover_number")
    classes = _clique_cover_masks(g.masks, len(g))
    cover = CliqueCover(tuple(g.from_mask(m) for m in classes))
    return len(cover), cover


def chromatic_number(g: CommutationGraph) -> int:
    check_size(len(g), ALPHA_LIMIT, "chromatic_number")
    return len(_exact_coloring(g.masks, len(g)))


# ---------------------------------------------------------------------------
# Maximal cliques
# ---------------------------------------------------------------------------


def _maximal_clique_masks(adj: Sequence[int], within: int) -> list[int]:
    found: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        # pivot with most neighbours in P
        pivot = max(_bits(p | x), key=lambda u: (_popcount(adj[u] & p), -u))
        for v in _bits(p & ~adj[pivot]):
            bit = 1 << v
            bk(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    if within:
        bk(0, within, 0)
    return sorted(found, key=lambda m: _bits(m))


def maximal_cliques(g: CommutationGraph) -> list[tuple[str, ...]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), sorted by vertex position."""
    return [g.from_mask(m) for m in _maximal_clique_masks(g.masks, (1 << len(g)) - 1)]


# ---------------------------------------------------------------------------
# Partition into chordal parts with prescribed total independence number
# ---------------------------------------------------------------------------


@dataclass
class _PartCache:
    adj: Sequence[int]
    chordal: dict[int, bool] = field(default_factory=dict)
    alpha: dict[int, int] = field(default_factory=dict)

    def is_chordal(self, mask: int) -> bool:
        hit = self.chordal.get(mask)
        if hit is None:
            hit = self.chordal[mask] = _mask_is_chordal(self.adj, mask)
        return hit

    def alpha_of(self, mask: int) -> int:
        hit = self.alpha.get(mask)
        if hit is None:
            hit = self.alpha[mask] = _popcount(_max_independent_set(self.adj, mask))
        return hit


def chordal_decomposition_search(
    g: CommutationGraph, target: int
) -> list[tuple[str, ...]] | None:
    """Partition V into chordal induced parts whose independence numbers sum to ``target``.

    Edges between parts are ignored.  The search is exhaustive over set
    partitions (each part grown from the lowest remaining vertex), with part
    chordality and independence numbers memoised and two prunes: a remaining
    vertex set R needs at least alpha(R) and at most |R| from its parts.
    Cliques are tried before other chordal parts, larger ones first.
    """
    n = len(g)
    check_size(n, DECOMPOSITION_LIMIT, "chordal_decomposition_search")
    cache = _PartCache(g.masks)
    failed: set[tuple[int, int]] = set()

    def candidates(rest: int, v: int, budget: int) -> list[tuple[int, int]]:
        out = []
        sub = rest
        while True:
            part = sub | (1 << v)
            if cache.is_chordal(part):
                a = cache.alpha_of(part)
                if a <= budget:
                    out.append((a, part))
            if sub == 0:
                break
            sub = (sub - 1) & rest
        out.sort(key=lambda t: (t[0], -_popcount(t[1]), _bits(t[1])))
        return out

    def search(remaining: int, t: int) -> list[int] | None:
        if not remaining:
            return [] if t == 0 else None
        if t > _popcount(remaining) or t < cache.alpha_of(remaining):
            return None
        if (remaining, t) in failed:
            return None
        low = remaining & -remaining
        v = low.bit_length() - 1
        for a, part in candidates(remaining & ~low, v, t):
            tail = search(remaining & ~part, t - a)
            if tail is not None:
                return [part] + tail
        failed.add((remaining, t))
        return None

    parts = search((1 << n) - 1, target)
    if parts is None:
        return None
    return [g.from_mask(p) for p in parts]
