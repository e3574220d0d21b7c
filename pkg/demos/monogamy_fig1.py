"""Two KCBS pentagons joined by four exclusive cross edges.

The joined graph can be partitioned into four cliques, each chordal with
independence number 1, so the two inequalities together obey a bound of 4 =
2 + 2.  Any behavior satisfying no-disturbance then violates at most one of
them.  Joining the pentagons with fewer cross edges never achieves this.
"""

from __future__ import annotations

from monogamy.analyzer import check_monogamy, kcbs_spec, minimality_scan
from monogamy.fixtures import PENTAGON_A, PENTAGON_B, fig1, two_pentagons, two_pentagons_complete


def verdict(name, g) -> None:
    v = check_monogamy(g, [kcbs_spec(g, PENTAGON_A), kcbs_spec(g, PENTAGON_B)])
    cover = v.certificate.cliques if v.certificate else None
    print(f"{name:26s} cover={v.clique_cover_number} target={v.target} "
          f"nd_max={v.nd_max} classical={v.classical_max} -> {v.classification}")
    if cover:
        print("    cliques:", [list(c) for c in cover])


def main() -> None:
    verdict("disjoint pentagons", two_pentagons())
    verdict("four cross edges (fig1)", fig1())
    verdict("all 25 cross edges", two_pentagons_complete())

    print("\nsearching every graph with k cross edges:")
    scan = minimality_scan(4)
    for level in scan.levels:
        print(f"  k={level.k}: {level.candidates:5d} candidates, "
              f"{level.hit_count} with cover number 4")
    print("fewest cross edges giving monogamy:", scan.minimal_k)


if __name__ == "__main__":
    main()
