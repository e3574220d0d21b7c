"""Named commutation graphs used throughout the package and its tests.

``pentagon``
    Five cyclically compatible, exclusive measurements A1..A5.
``fig1``
    Two pentagons A1..A5 and A'1..A'5 joined by the exclusive triangles
    {A1, A'1, A'2} and {A4, A5, A'5}.
``fig3b``
    The orthogonality graph of the ten 4D projectors in :mod:`monogamy.quantum`:
    two pentagons, A1 adjacent to every A'i and A'1 adjacent to every Ai.
``bell-chsh-3party``
    Alice, Bob and Charlie with two +-1 settings each; every cross-party
    pair is compatible (not exclusive).
``two-pentagons-complete``
    Two pentagons with all 25 cross edges, exclusive.
"""

from __future__ import annotations

import json
from importlib import resources

from .errors import ValidationError
from .graph import CommutationGraph, cycle_graph, disjoint_union, parse_graph

PENTAGON_A = tuple(f"A{i}" for i in range(1, 6))
PENTAGON_B = tuple(f"A'{i}" for i in range(1, 6))

FIG1_CROSS_EDGES = (("A1", "A'1"), ("A1", "A'2"), ("A4", "A'5"), ("A5", "A'5"))


def pentagon(labels=PENTAGON_A) -> CommutationGraph:
    return cycle_graph(labels, exclusive=True)


def two_pentagons(cross_edges=(), exclusive: bool = True) -> CommutationGraph:
    base = disjoint_union(pentagon(PENTAGON_A), pentagon(PENTAGON_B))
    return base.with_edges((u, v, exclusive) for u, v in cross_edges)


def fig1() -> CommutationGraph:
    return two_pentagons(FIG1_CROSS_EDGES)


def fig3b() -> CommutationGraph:
    cross = [("A1", b) for b in PENTAGON_B] + [(a, "A'1") for a in PENTAGON_A if a != "A1"]
    return two_pentagons(cross)


def two_pentagons_complete() -> CommutationGraph:
    return two_pentagons([(a, b) for a in PENTAGON_A for b in PENTAGON_B])


def bell_chsh_3party() -> CommutationGraph:
    from .bell import BellScenario, build_bell_graph

    return build_bell_graph(BellScenario.standard(3))


BUILDERS = {
    "pentagon": pentagon,
    "fig1": fig1,
    "fig3b": fig3b,
    "bell-chsh-3party": bell_chsh_3party,
    "two-pentagons-complete": two_pentagons_complete,
}


def data_path(*parts: str):
    path = resources.files("monogamy").joinpath("data")
    for part in parts:
        path = path.joinpath(part)
    return path


def load_fixture(name: str) -> CommutationGraph:
    """Load a shipped fixture graph by name (reads the JSON file in the package data)."""
    if name not in BUILDERS:
        raise ValidationError(f"unknown fixture {name!r}; known: {', '.join(BUILDERS)}")
    return parse_graph(data_path("fixtures", f"{name}.json").read_text())


def write_fixture_files(root) -> None:
    """Regenerate the JSON fixture files from the builders above."""
    for name, build in BUILDERS.items():
        (root / f"{name}.json").write_text(json.dumps(build().to_dict(), indent=1) + "\n")
