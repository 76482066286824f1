"""Search for violations of log-convexity in the shift parameter mu.

Two domains are sampled: x anywhere in the shift-theorem domain (negative
x allowed, i.e. positive pFq argument), and x >= 0 with a positive kernel
side, where the property is actually observed. Violations are printed with
their second log difference.
"""
import argparse

import numpy as np

from hyperbound import logconvex_check
from hyperbound.sampling import logconvex_case, stated_logconvex_case


def sweep(sampler, n, rng, mu_grid):
    found = []
    for _ in range(n):
        split, x = sampler(rng)
        r = logconvex_check(split, mu_grid, x)
        if not r.passed:
            found.append((r.min_margin, x, split))
    return found


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--specs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    mu_grid = np.linspace(0.0, 3.0, 7)
    for name, sampler in (("any x in shift domain", stated_logconvex_case), ("x >= 0, positive kernel side", logconvex_case)):
        found = sweep(sampler, args.specs, rng, mu_grid)
        print(f"{name}: {len(found)}/{args.specs} violations")
        for margin, x, split in sorted(found, key=lambda f: f[0])[: args.show]:
            print(f"   margin {margin:+.3e}  x={x:+.4f}  {split}")


if __name__ == "__main__":
    main()
