"""Sandwich check of every bound family on random hypothesis-passing specs.

Prints, per family, how many specs and grid points were checked, the number
of violations and the median relative width of the sandwich.
"""
import argparse

import numpy as np

from hyperbound import certify
from hyperbound.bounds import FAMILIES
from hyperbound.sampling import bound_case


def run(family, specs, rng):
    points, bad, widths = 0, [], []
    for _ in range(specs):
        while True:
            A, B, sigma, grid = bound_case(rng, family)
            if not certify(family, A, B, 0.0, sigma).advisory:
                break
        for x in grid:
            c = certify(family, A, B, float(x), sigma)
            points += 1
            if not c.sandwich_ok(1e-9):
                bad.append((A, B, float(x)))
            if c.lower is not None and c.upper is not None and c.reference_value:
                widths.append((c.upper - c.lower) / abs(c.reference_value))
    return points, bad, float(np.median(widths)) if widths else float("nan")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--specs", type=int, default=60, help="specs per family")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'family':32s} {'points':>7s} {'viol':>5s} {'median width':>13s}")
    for fam in sorted(FAMILIES) + ["f01"]:
        points, bad, width = run(fam, args.specs, rng)
        shown = f"{width:13.3e}" if np.isfinite(width) else f"{'n/a (upper only)':>13s}"
        print(f"{fam:32s} {points:7d} {len(bad):5d} {shown}")
        for case in bad[:3]:
            print("   violation", case)


if __name__ == "__main__":
    main()
