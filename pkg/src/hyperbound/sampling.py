"""Random admissible parameter sets for sweeps and acceptance runs.

Every generator takes a :class:`numpy.random.Generator` and returns plain
tuples or specs, so a fixed seed reproduces a whole campaign. Parameters
are drawn uniformly from ``[lo, hi]``; cases needing an exact excess
(``psi = 0`` or ``psi = 1/2``) adjust the last lower parameter and redraw
when that pushes it out of range.
"""
from __future__ import annotations

import numpy as np

from .monotone import logconvex_domain, split_domain
from .params import check_weak_supermajorization
from .representations import SplitSpec

REP_KINDS = (
    "stieltjes",
    "split",
    "split_atom",
    "split_laplace",
    "laplace_q_q",
    "laplace_q_q_psi0",
    "laplace_q_plus_1",
    "cosine_gt",
    "cosine_eq",
    "small_p",
)

# rep_vs_series kind behind each sampler
REP_TARGET = {
    "split_atom": "split",
    "split_laplace": "split",
    "laplace_q_q": "laplace",
    "laplace_q_q_psi0": "laplace",
    "laplace_q_plus_1": "laplace",
    "cosine_gt": "cosine",
    "cosine_eq": "cosine",
}


class _Redraw(Exception):
    pass


def _u(rng, n, lo=0.2, hi=5.0):
    return tuple(float(v) for v in rng.uniform(lo, hi, n))


def _fix_last(B, target, lo=0.2, hi=5.0):
    B = list(B)
    B[-1] += target - sum(B)
    if not lo <= B[-1] <= hi:
        raise _Redraw
    return tuple(B)


def _need(ok):
    if not ok:
        raise _Redraw


def _split_grid(p1, q1):
    if p1 == q1 + 1:
        return np.linspace(-0.9, 0.9, 15)
    return np.linspace(-3.0, 10.0, 15)


def _rep_case(rng, kind):
    q = int(rng.integers(1, 4))
    if kind == "stieltjes":
        A, B = _u(rng, q), _u(rng, q)
        _need(sum(B) - sum(A) > 0)
        return dict(sigma=float(rng.uniform(0.2, 5)), A=A, B=B), np.linspace(-0.9, 0.9, 15)
    if kind == "laplace_q_q":
        A, B = _u(rng, q), _u(rng, q)
        _need(sum(B) - sum(A) > 0)
        return dict(A=A, B=B, variant="q_q"), np.linspace(-3, 10, 15)
    if kind == "laplace_q_q_psi0":
        A = _u(rng, q)
        return dict(A=A, B=_fix_last(_u(rng, q), sum(A)), variant="q_q_psi0"), np.linspace(-3, 10, 15)
    if kind == "laplace_q_plus_1":
        return dict(A=_u(rng, q), B=_u(rng, q - 1), variant="q_plus_1"), np.linspace(-0.9, 0.9, 15)
    if kind == "cosine_gt":
        A, B = _u(rng, q - 1), _u(rng, q)
        _need(sum(B) - sum(A) > 0.5)
        return dict(A=A, B=B, variant="psi_gt_half"), np.linspace(-3, 20, 15)
    if kind == "cosine_eq":
        A = _u(rng, q - 1)
        return dict(A=A, B=_fix_last(_u(rng, q), sum(A) + 0.5), variant="psi_eq_half"), np.linspace(-3, 20, 15)
    if kind == "small_p":
        p = int(rng.integers(0, q))
        A, B, al = _u(rng, p), _u(rng, q), _u(rng, q - p)
        _need(sum(B) - sum(A) - sum(al) > 0)
        return dict(A=A, B=B, alphas=al), np.linspace(-3, 20, 15)
    p1 = int(rng.integers(0, 3))
    q1 = int(rng.integers(max(p1 - 1, 0), 3))
    if kind == "split":
        p2 = int(rng.integers(1, 3))
        A2, B2 = _u(rng, p2), _u(rng, p2)
        if sum(B2) < sum(A2):
            A2, B2 = B2, A2
        return dict(split=SplitSpec(_u(rng, p1), _u(rng, q1), A2, B2)), _split_grid(p1, q1)
    if kind == "split_atom":
        p2 = int(rng.integers(1, 3))
        A2 = _u(rng, p2)
        B2 = _fix_last(_u(rng, p2), sum(A2))
        return dict(split=SplitSpec(_u(rng, p1), _u(rng, q1), A2, B2)), _split_grid(p1, q1)
    if kind == "split_laplace":
        p1 = int(rng.integers(0, 2))
        q1 = int(rng.integers(p1, 3))
        grid = np.linspace(0.0, 0.9 if p1 == q1 else 5.0, 15)
        return dict(split=SplitSpec(_u(rng, p1), _u(rng, q1), _u(rng, 2), _u(rng, 1))), grid
    raise ValueError(f"unknown representation sampler {kind!r}")


def rep_case(rng, kind):
    """Keyword arguments for ``rep_vs_series`` plus a z-grid inside the validity domain."""
    while True:
        try:
            return _rep_case(rng, kind)
        except _Redraw:
            continue


def bound_case(rng, family):
    """``(A, B, sigma, x_grid)`` of the right shape for a bound family.

    The caller still has to check the family's hypotheses.
    """
    q = int(rng.integers(1, 4))
    sigma = float(rng.uniform(0.2, 5))
    if family == "p_lt_q":
        A, B = _u(rng, int(rng.integers(0, q)), 0.2, 8), _u(rng, q, 0.2, 8)
    elif family == "bessel":
        A, B = _u(rng, q - 1, 0.2, 8), _u(rng, q, 0.2, 8)
    elif family == "f01":
        A, B = (), _u(rng, 1, 0.2, 8)
    else:
        A, B = _u(rng, q, 0.2, 8), _u(rng, q, 0.2, 8)
    if family.startswith("stieltjes_positive"):
        grid = np.linspace(0.0, 0.95, 32)
    elif family == "jensen":
        grid = np.linspace(-20.0, 40.0, 32)
    else:
        grid = np.linspace(0.0, 40.0, 32)
    return A, B, sigma, grid


def dominated_pair(rng, q, lo=0.2, hi=5.0):
    """``(A, B)`` of length q with B weakly supermajorized by A (rejection sampling)."""
    while True:
        A, B = _u(rng, q, lo, hi), _u(rng, q, lo, hi)
        if check_weak_supermajorization(A, B).weak:
            return A, B


def ratio_case(rng):
    """A split whose measure side satisfies the ratio-monotonicity hypotheses."""
    A2, B2 = dominated_pair(rng, int(rng.integers(1, 3)))
    p1 = int(rng.integers(0, 3))
    q1 = int(rng.integers(max(p1 - 1, 0), 3))
    return SplitSpec(_u(rng, p1), _u(rng, q1), A2, B2)


def logconvex_case(rng):
    """A split plus an x inside :func:`logconvex_domain` (where the property is claimed).

    The kernel side must itself be dominated (``p1 = q1``) or dominated after
    dropping its largest upper parameter (``p1 = q1 + 1``).
    """
    while True:
        A2, B2 = dominated_pair(rng, int(rng.integers(1, 3)))
        q1 = int(rng.integers(0, 3))
        if rng.random() < 0.5:
            A1, B1 = dominated_pair(rng, q1) if q1 else ((), ())
        else:
            A1, B1 = dominated_pair(rng, q1) if q1 else ((), ())
            A1 = A1 + (float(rng.uniform(max(A1 + (0.2,)), 5.0)),)
        split = SplitSpec(A1, B1, A2, B2)
        lo, hi, _, _ = logconvex_domain(split)
        if lo <= hi:
            return split, float(rng.uniform(lo, 10.0))


def stated_logconvex_case(rng):
    """A split plus an x drawn from the full stated shift-theorem domain (may be negative)."""
    split = ratio_case(rng)
    lo, hi, _, _ = split_domain(split)
    return split, float(rng.uniform(max(lo, -0.99), min(hi, 10.0)))
