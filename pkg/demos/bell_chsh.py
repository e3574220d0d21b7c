"""CHSH monogamy for three parties.

When Alice uses the same two settings against Bob and against Charlie, the
two CHSH sums add up to at most 4 under no-signaling.  Regrouping the terms
gives two CHSH expressions whose measurements form a chordal graph, and each
of those is classically bounded by 2.  With separate settings for each
partner, both can reach the PR-box value 4 at once.
"""

from __future__ import annotations

from monogamy.bell import (
    BellScenario,
    bell_jpd_factorize,
    chsh,
    expression_value,
    local_max,
    ns_lp_max,
    pr_box_behavior,
    rearranged_chsh_pair,
)


def main() -> None:
    tri = BellScenario.standard(3)
    ab, ac = chsh("A1", "A2", "B1", "B2"), chsh("A1", "A2", "C1", "C2")
    print("single CHSH, no-signaling:", ns_lp_max(BellScenario.standard(2), [ab]).value)
    print("shared settings, pair:", ns_lp_max(tri, [ab, ac]).value, "| local:", local_max(tri, [ab, ac])[0])

    wide = BellScenario({"A": ("A1", "A2", "A3", "A4"), "B": ("B1", "B2"), "C": ("C1", "C2")})
    print("separate settings, pair:", ns_lp_max(wide, [ab, chsh("A3", "A4", "C1", "C2")]).value)

    box = pr_box_behavior(tri, "A", "B")
    left = [expression_value(box, e) for e in (ab, ac)]
    right = [expression_value(box, e) for e in rearranged_chsh_pair(tri)]
    print(f"\nPR box between A and B: CHSH(A,B)={left[0]}, CHSH(A,C)={left[1]}")
    print(f"rearranged terms: {right[0]} + {right[1]} = {sum(right)}")

    jpd = bell_jpd_factorize(("A1", "A2", "B1", "C2"), box)
    print("joint distribution on {A1, A2, B1, C2}:")
    for key, p in sorted(jpd.support.items()):
        if p:
            print("  ", "".join(map(str, key)), p)


if __name__ == "__main__":
    main()
