"""Print the golden constructions with their invariants and tensor dimensions.

    python scripts/reproduce_examples.py [--trace]
"""

import argparse

from dimcalc import tensor as te
from dimcalc.catalog import AF_PULLBACK, DVR_OVER_SUBFIELD, PVD_OVER_K, PVD_TOWER
from dimcalc.dsl import render_expr
from dimcalc.invariants import invariants

RINGS = {
    "AF pullback over semilocal plane": AF_PULLBACK,
    "DVR over k(X)": DVR_OVER_SUBFIELD,
    "PVD over k": PVD_OVER_K,
    "PVD tower": PVD_TOWER,
}

PAIRS = [
    ("AF pullback over semilocal plane", "AF pullback over semilocal plane"),
    ("DVR over k(X)", "PVD over k"),
    ("PVD over k", "PVD over k"),
    ("PVD over k", "PVD tower"),
    ("DVR over k(X)", "DVR over k(X)"),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trace", action="store_true")
    args = ap.parse_args()

    for name, ring in RINGS.items():
        print(f"{name}\n  {render_expr(ring)}\n  {invariants(ring)}")
    print()
    for n1, n2 in PAIRS:
        a, b = RINGS[n1], RINGS[n2]
        k = te.tensor_krull_dim(a, b)
        v = te.tensor_valuative_dim(a, b)
        j = te.tensor_jaffard(a, b)
        print(f"{n1} (x) {n2}: dim {k.value} [{k.rule}], "
              f"dim_v {v.value} [{v.rule}], Jaffard {j.value}")
        if args.trace:
            print(k.render(1))
    raw = te.raw_pullback_pair_formula(AF_PULLBACK, AF_PULLBACK)
    print(f"\nunchecked pullback-pair formula on the AF pullback: {raw.value} "
          "(true value above is 4)")


if __name__ == "__main__":
    main()
