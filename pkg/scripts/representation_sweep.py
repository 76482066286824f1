"""Compare every integral representation with direct summation on random specs."""
import argparse

import numpy as np

from hyperbound import rep_vs_series
from hyperbound.sampling import REP_KINDS, REP_TARGET, rep_case


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--specs", type=int, default=20)
    ap.add_argument("--rel-tol", type=float, default=1e-7)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'representation':18s} {'specs':>5s} {'fail':>5s} {'max rel':>10s}")
    for kind in REP_KINDS:
        fails, worst = 0, 0.0
        for _ in range(args.specs):
            kw, z = rep_case(rng, kind)
            r = rep_vs_series(REP_TARGET.get(kind, kind), z, rel_tol=args.rel_tol, **kw)
            worst = max(worst, r.max_rel)
            fails += not r.passed
        print(f"{kind:18s} {args.specs:5d} {fails:5d} {worst:10.2e}")


if __name__ == "__main__":
    main()
