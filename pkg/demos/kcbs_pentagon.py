"""The KCBS pentagon: classical bound 2, no-disturbance maximum 5/2.

Five measurements in a cycle, neighbours exclusive.  A noncontextual
assignment can set at most two of them to 1; a behavior that only respects
no-disturbance reaches 5/2 by giving every context a fair coin.
"""

from __future__ import annotations

from monogamy.algorithms import independence_number, is_chordal
from monogamy.fixtures import PENTAGON_A, pentagon
from monogamy.jpd import jpd_exists_lp
from monogamy.ndpolytope import LinearObjective, classical_max, nd_max


def main() -> None:
    g = pentagon()
    print("chordal:", is_chordal(g).chordal, "| induced cycle:", is_chordal(g).witness_cycle)
    alpha, witness = independence_number(g)
    print(f"independence number {alpha}, e.g. {witness}")

    obj = LinearObjective.unit(PENTAGON_A)
    value, assignment = classical_max(g, obj)
    print(f"classical maximum {value} via {assignment}")

    best = nd_max(g, obj)
    print(f"no-disturbance maximum {best.value}")
    for ctx, table in zip(best.witness.contexts, best.witness.tables):
        print("  ", ctx, {"".join(map(str, k)): str(p) for k, p in table.items() if p})

    # the optimal behavior has no global joint distribution: it is contextual
    print("joint distribution exists:", jpd_exists_lp(g, best.witness))


if __name__ == "__main__":
    main()
