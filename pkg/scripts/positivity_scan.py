"""Kernel positivity on random specs, split by whether B is weakly supermajorized by A.

Dominated specs should never go negative. Among the others the scan shows
how often v(t) >= 0 still holds and whether the kernel sign follows it.
"""
import argparse

import numpy as np

from hyperbound import KernelSpec, check_weak_supermajorization, kernel_nonneg_scan, v_nonneg_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--specs", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    tally = {}
    lowest = np.inf
    for _ in range(args.specs):
        q = int(rng.integers(1, 4))
        A, B = tuple(rng.uniform(0.2, 5, q)), tuple(rng.uniform(0.2, 5, q))
        if sum(B) - sum(A) <= 0:
            continue
        dom = check_weak_supermajorization(A, B).weak
        v_ok = v_nonneg_check(A, B).nonneg
        r = kernel_nonneg_scan(KernelSpec(A, B))
        key = (dom, v_ok, r.passed)
        tally[key] = tally.get(key, 0) + 1
        if dom:
            lowest = min(lowest, r.min_margin)
    print("dominated  v>=0  kernel>=0  count")
    for (dom, v_ok, ok), n in sorted(tally.items()):
        print(f"{dom!s:9s} {v_ok!s:5s} {ok!s:10s} {n:5d}")
    print(f"lowest margin among dominated specs: {lowest:.3e}")


if __name__ == "__main__":
    main()
