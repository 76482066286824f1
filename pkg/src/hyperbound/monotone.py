"""Grid scans for complete monotonicity, ratio monotonicity and log-convexity.

These are scans, not proofs: a passing report says no counterexample was
found at the given order and resolution. Margins are signed slacks;
negative values that are within the evaluation error are clamped to zero,
so ``passed`` is exactly ``min_margin >= -tolerance``.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special

from .errors import HypothesisFailed, ShapeError
from .params import as_params, check_weak_supermajorization, log_coeff_f, v_nonneg_check
from .representations import SplitSpec, hyp_grid
from .results import Hypothesis, MonotoneReport
from .series import HyperSpec

DEFAULT_GRID = ("log", 0.01, 20.0, 64)
MAX_ORDER = 8
MAX_ORDER_COMPOSITE = 4
RATIO_LEFT_STOP = -1.0 + 1e-3


def default_grid(spec=DEFAULT_GRID):
    kind, lo, hi, n = spec
    return np.geomspace(lo, hi, n) if kind == "log" else np.linspace(lo, hi, n)


def _grid(x_grid):
    x = default_grid() if x_grid is None else np.asarray(x_grid, dtype=float).ravel()
    if x.size < 1 or not np.all(np.isfinite(x)):
        raise ShapeError("grid must be a nonempty array of finite numbers")
    return np.sort(x)


def _describe(x):
    return {"start": float(x[0]), "stop": float(x[-1]), "count": int(x.size)}


def _clamp(raw, budget):
    """Signed margin with negatives inside the error budget treated as ties."""
    raw = np.asarray(raw, dtype=float)
    return np.where((raw < 0) & (raw >= -budget), 0.0, raw)


def _positivity(A, B, name="kernel_positivity"):
    """``sum t^a - t^b >= 0`` on (0, 1], by weak supermajorization or the scan."""
    A, B = as_params(A), as_params(B)
    if len(A) != len(B):
        return Hypothesis(name, None, "needs equal lengths")
    if not A:
        return Hypothesis(name, True, "empty")
    weak = check_weak_supermajorization(A, B).weak if all(v > 0 for v in A + B) else None
    vc = v_nonneg_check(A, B)
    return Hypothesis(name, bool(weak) or bool(vc.nonneg), {"weak_supermajorized": weak, "v_min": vc.v_min})


def _finish(kind, x, margins, budgets_ok, tolerance, hyps, n_max=None, labels=None, strict=False, extra_grid=None):
    """Assemble a report from an ``(orders, points)`` margin array."""
    margins = np.atleast_2d(margins)
    failures = []
    finite = np.isfinite(margins)
    for i, j in zip(*np.nonzero(~finite)):
        failures.append({"order": labels[i] if labels else int(i), "x": float(x[j]), "reason": "evaluation failed"})
    m = np.where(finite, margins, np.inf)
    if m.size and np.isfinite(m).any():
        k = np.unravel_index(int(np.argmin(m)), m.shape)
        min_margin = float(m[k])
        worst = {"order": labels[k[0]] if labels else int(k[0]), "x": float(x[k[1]]), "margin": min_margin}
    else:
        min_margin, worst = math.nan, {}
    for i, j in zip(*np.nonzero(finite & (margins < -tolerance))):
        failures.append({"order": labels[i] if labels else int(i), "x": float(x[j]), "margin": float(margins[i, j])})
    passed = bool(min_margin >= -tolerance) and not failures
    grid = _describe(x)
    if extra_grid:
        grid.update(extra_grid)
    if strict and any(h.status is False for h in hyps):
        raise HypothesisFailed(", ".join(h.name for h in hyps if h.status is False))
    return MonotoneReport(kind, grid, min_margin, tolerance, passed, n_max, worst, hyps, failures)


# ----------------------------------------------------------------------------
# complete monotonicity


def _shift_derivatives(A, B, x, n_max):
    """``(-1)^n d^n/dx^n F(A; B; -x)`` for n = 0..n_max, with error budgets."""
    vals = np.empty((n_max + 1, x.size))
    errs = np.empty_like(vals)
    for n in range(n_max + 1):
        lf, s = log_coeff_f(A, B, n)
        fac = 0.0 if s == 0 else s * math.exp(lf)
        v, e = hyp_grid([a + n for a in A], [b + n for b in B], -x)
        vals[n], errs[n] = fac * v, abs(fac) * e
    return vals, errs


def composite_value(sigma, A, B, x):
    """``x^-sigma F(sigma, A; B; -1/x)`` on an array of x > 0."""
    x = np.asarray(x, dtype=float)
    v, e = hyp_grid((sigma,) + as_params(A), B, -1.0 / x)
    s = x**-sigma
    return s * v, s * e


def composite_derivatives(sigma, A, B, x, n_max):
    """``(-1)^n`` times the n-th derivative of the composite, exactly.

    Differentiating the series term by term gives
    ``(-1)^n D^n [x^-s F(s, A; B; -1/x)] = (s)_n x^(-s-n) F(s+n, A; B; -1/x)``.
    """
    x = np.asarray(x, dtype=float)
    vals = np.empty((n_max + 1, x.size))
    errs = np.empty_like(vals)
    for n in range(n_max + 1):
        poch = math.exp(special.gammaln(sigma + n) - special.gammaln(sigma))
        v, e = composite_value(sigma + n, A, B, x)
        vals[n], errs[n] = poch * v, poch * e
    return vals, errs


def fd_derivatives(func, x, n_max):
    """Central finite differences of ``(-1)^n f^(n)`` with ``h = max(1e-3 x, 1e-4)``.

    ``func`` maps an array to values; n_max is capped at 4 (noise floor).
    """
    if n_max > MAX_ORDER_COMPOSITE:
        raise ValueError(f"finite differences are offered up to order {MAX_ORDER_COMPOSITE}")
    x = np.asarray(x, dtype=float)
    h = np.maximum(1e-3 * x, 1e-4)
    out = np.empty((n_max + 1, x.size))
    out[0] = func(x)
    for n in range(1, n_max + 1):
        acc = np.zeros(x.size)
        for k in range(n + 1):
            acc += (-1) ** k * math.comb(n, k) * func(x + (n / 2.0 - k) * h)
        out[n] = (-1) ** n * acc / h**n
    return out


def cm_check(spec, n_max: int = 6, x_grid=None, tolerance: float = 1e-10, method: str = "analytic", strict=False) -> MonotoneReport:
    """Scan ``(-1)^n f^(n)(x) >= 0`` for ``n <= n_max`` on a grid of x > 0.

    ``spec`` is either a :class:`HyperSpec` (p = q or q + 1), meaning
    ``f(x) = pFq(A; B; -x)``, or a triple ``(sigma, A, B)`` meaning the
    composite ``x^-sigma q+1Fq(sigma, A; B; -1/x)``. Derivatives come from
    the shift identities; ``method="fd"`` uses finite differences for the
    composite instead (orders up to 4).

    Examples
    --------
    >>> cm_check(HyperSpec([1], [2]), 6).passed
    True
    """
    if not 0 <= n_max <= MAX_ORDER:
        raise ValueError(f"n_max must lie in 0..{MAX_ORDER}")
    x = _grid(x_grid)
    if np.any(x <= 0):
        raise ValueError("complete monotonicity is scanned on x > 0")
    if isinstance(spec, HyperSpec):
        A, B = spec.A, spec.B
        if spec.p not in (spec.q, spec.q + 1):
            raise ShapeError("cm_check covers qFq and q+1Fq")
        if spec.p == spec.q:
            hyps = [_positivity(A, B)]
        else:
            sig = A[0]
            hyps = [Hypothesis("sigma_positive", sig > 0, sig), _positivity(A[1:], B)]
        vals, errs = _shift_derivatives(A, B, x, n_max)
        kind_extra = {"function": "pFq(-x)"}
    else:
        sigma, A, B = spec
        A, B = as_params(A), as_params(B)
        hyps = [Hypothesis("sigma_positive", sigma > 0, sigma), _positivity(A, B)]
        if method == "fd":
            def f(t):
                return composite_value(sigma, A, B, t)[0]

            vals = fd_derivatives(f, x, n_max)
            h = np.maximum(1e-3 * x, 1e-4)
            errs = np.array([1e-12 * np.abs(vals[0]) / h**n + 1e-6 * np.abs(vals[n]) for n in range(n_max + 1)])
        else:
            vals, errs = composite_derivatives(sigma, A, B, x, n_max)
        kind_extra = {"function": "x^-sigma F(-1/x)", "method": method}
    margins = _clamp(vals, errs)
    return _finish("cm", x, margins, None, tolerance, hyps, n_max, list(range(n_max + 1)), strict, kind_extra)


def _log_derivatives(fd):
    """Derivatives ``L^(1..N)`` of ``L = log f`` from ``f^(0..N)`` (Leibniz recursion)."""
    N = fd.shape[0] - 1
    L = np.zeros_like(fd)
    mag = np.zeros_like(fd)
    for n in range(N):
        acc = fd[n + 1].copy()
        m = np.abs(fd[n + 1])
        for k in range(n):
            term = math.comb(n, k) * fd[n - k] * L[k + 1]
            acc -= term
            m = m + np.abs(term)
        L[n + 1] = acc / fd[0]
        mag[n + 1] = m / np.abs(fd[0])
    return L, mag


def log_cm_check(sigma, A, B, x_grid=None, order: int = 4, tolerance: float = 1e-10, strict=False) -> MonotoneReport:
    """Scan whether ``-(log f)'`` is completely monotone up to ``order``.

    ``f(x) = x^-sigma q+1Fq(sigma, A; B; -1/x)``. The derivatives of log f
    come from the exact derivatives of f through the Leibniz recursion;
    margins are ``(-1)^(k+1) (log f)^(k+1)(x) x^(k+1) / k!``, which stay of
    order one for logarithm-like functions.
    """
    if not 0 <= order <= MAX_ORDER_COMPOSITE:
        raise ValueError(f"order must lie in 0..{MAX_ORDER_COMPOSITE}")
    A, B = as_params(A), as_params(B)
    x = _grid(x_grid)
    if np.any(x <= 0):
        raise ValueError("log-complete monotonicity is scanned on x > 0")
    hyps = [Hypothesis("sigma_in_0_1", 0 < sigma <= 1, sigma), _positivity(A, B)]
    sgn = np.array([(-1) ** k for k in range(order + 2)], dtype=float)[:, None]
    fd, fe = composite_derivatives(sigma, A, B, x, order + 1)
    L, mag = _log_derivatives(sgn * fd)
    rows, budgets = [], []
    for k in range(order + 1):
        scale = x ** (k + 1) / math.factorial(k)
        rows.append((-1) ** (k + 1) * L[k + 1] * scale)
        rel = np.max(fe[: k + 2] / np.maximum(np.abs(fd[: k + 2]), 1e-300), axis=0)
        budgets.append((mag[k + 1] * (1e-13 + 4 * rel)) * scale)
    margins = _clamp(np.array(rows), np.array(budgets))
    return _finish("log_cm", x, margins, None, tolerance, hyps, order, list(range(order + 1)), strict)


# ----------------------------------------------------------------------------
# shifts along the measure-side parameters


def _split_hypotheses(split: SplitSpec):
    hyps = [
        Hypothesis("kernel_side_positive", all(v > 0 for v in split.A1 + split.B1), None),
        Hypothesis("balanced_measure", len(split.A2) == len(split.B2), (len(split.A2), len(split.B2))),
    ]
    if len(split.A2) == len(split.B2):
        hyps.append(_positivity(split.A2, split.B2, "measure_positivity"))
    else:
        hyps.append(Hypothesis("measure_positivity", None, "needs p2 = q2"))
    return hyps


def split_domain(split: SplitSpec):
    """Interval of x on which the shift theorems apply, with the clause used.

    Returns ``(lo, hi, clause, extra_hypotheses)`` for the function of x
    evaluated at ``-x``.
    """
    p = len(split.A1) + len(split.A2)
    q = len(split.B1) + len(split.B2)
    extra = []
    if p == q:
        h = _positivity(split.A1, split.B1, "kernel_side_positivity")
        extra.append(h)
        if h.status:
            return -math.inf, math.inf, "p=q, kernel side positive", extra
        return -math.inf, 0.0, "p<=q", extra
    if p == q + 1:
        # drop the largest kernel-side upper parameter
        A1 = sorted(split.A1)[:-1] if split.A1 else []
        h = _positivity(A1, split.B1, "kernel_side_positivity") if len(A1) == len(split.B1) else Hypothesis("kernel_side_positivity", None, "lengths")
        extra.append(h)
        if h.status:
            return RATIO_LEFT_STOP, math.inf, "p=q+1, kernel side positive", extra
        return RATIO_LEFT_STOP, 0.0, "p=q+1", extra
    return -math.inf, 0.0, "p<=q", extra


def _full_values(split, mu, x):
    A = split.A1 + tuple(a + mu for a in split.A2)
    B = split.B1 + tuple(b + mu for b in split.B2)
    return hyp_grid(A, B, -x)


def _restrict(x, lo, hi):
    keep = (x >= lo) & (x <= hi)
    return x[keep], x[~keep]


def ratio_monotone_check(split: SplitSpec, mu: float, x_grid=None, tolerance: float = 1e-10, strict=False) -> MonotoneReport:
    """Scan ``r(x) = F(A1, A2+mu; B1, B2+mu; -x) / F(A1, A2; B1, B2; -x)`` for decrease.

    Grid points outside the applicable interval are dropped and listed in
    ``report.grid['excluded']``. Margins are relative first differences
    ``(r_i - r_(i+1)) / max|r|``.
    """
    if not mu >= 0:
        raise ValueError("mu must be nonnegative")
    x_all = _grid(np.linspace(-0.9, 5.0, 60) if x_grid is None else x_grid)
    lo, hi, clause, extra = split_domain(split)
    x, excluded = _restrict(x_all, lo, hi)
    hyps = _split_hypotheses(split) + extra
    info = {"clause": clause, "domain": [lo, hi], "excluded": excluded.tolist(), "mu": mu}
    if x.size < 2:
        return _finish("ratio_decreasing", x_all, np.zeros((1, 0)), None, tolerance, hyps, None, None, strict, info)
    num, ne = _full_values(split, mu, x)
    den, de = _full_values(split, 0.0, x)
    r = num / den
    re = np.abs(r) * (ne / np.abs(num) + de / np.abs(den))
    scale = np.maximum(np.abs(r[:-1]), np.abs(r[1:]))
    raw = (r[:-1] - r[1:]) / scale
    budget = (re[:-1] + re[1:]) / scale
    margins = _clamp(raw, budget)[None, :]
    return _finish("ratio_decreasing", x[:-1], margins, None, tolerance, hyps, None, ["d1"], strict, info)


def logconvex_domain(split: SplitSpec):
    """Interval of x on which log-convexity in the shift is certified.

    Only the kernel-side positive clauses carry over, and only for
    ``x >= 0`` (nonpositive argument). For a positive argument the shifted
    function can be log-concave: ``mu -> 1F1(1+mu; 2+mu; 1)`` has second
    log-difference -0.077 on ``{0, 1, 2}``. When no clause applies the
    interval is empty (``lo > hi``).
    """
    _, _, clause, extra = split_domain(split)
    if extra and extra[0].status:
        return 0.0, math.inf, clause, extra
    return math.inf, -math.inf, clause + ", no certified x", extra


def logconvex_check(split: SplitSpec, mu_grid, x: float, tolerance: float = 1e-10, strict=False) -> MonotoneReport:
    """Scan second differences of ``mu -> log F(A1, A2+mu; B1, B2+mu; -x)``.

    ``mu_grid`` must be equally spaced (checked to 1e-9 relative).
    """
    mu = np.asarray(mu_grid, dtype=float).ravel()
    if mu.size < 3:
        raise ShapeError("need at least three mu values")
    step = np.diff(mu)
    if np.any(step <= 0) or np.ptp(step) > 1e-9 * np.max(step):
        raise ShapeError("mu grid must be increasing and equally spaced")
    lo, hi, clause, extra = logconvex_domain(split)
    hyps = _split_hypotheses(split) + extra
    hyps.append(Hypothesis("x_in_domain", bool(lo <= x <= hi), [lo, hi]))
    logs = np.empty(mu.size)
    lerr = np.empty(mu.size)
    for i, m in enumerate(mu):
        v, e = _full_values(split, float(m), np.array([x]))
        logs[i] = math.log(v[0]) if v[0] > 0 else math.nan
        lerr[i] = e[0] / abs(v[0]) if v[0] != 0 else math.inf
    raw = logs[:-2] - 2 * logs[1:-1] + logs[2:]
    budget = lerr[:-2] + 2 * lerr[1:-1] + lerr[2:] + 4e-16 * (np.abs(logs[:-2]) + 2 * np.abs(logs[1:-1]) + np.abs(logs[2:]))
    margins = _clamp(raw, budget)[None, :]
    info = {"clause": clause, "x": x, "mu": mu.tolist()}
    return _finish("log_convex", mu[1:-1], margins, None, tolerance, hyps, None, ["d2"], strict, info)
