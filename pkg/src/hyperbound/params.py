"""Parameter-vector algebra.

Elementary symmetric polynomials, Pochhammer products in log space, the
series coefficients ``f_n = (A)_n/(B)_n``, the parametric excess and every
positivity / ordering predicate used to gate the bounds and kernel results.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NonPositiveParameter,
    PoleError,
    ShapeError,
)

# v(t) decision: grid size and tolerance
V_GRID_SIZE = 2048
V_TOL = 1e-12
PRED_RTOL = 1e-12


def as_params(values) -> tuple:
    """Validate and freeze a parameter vector (finite reals, original order kept)."""
    if values is None:
        return ()
    if isinstance(values, (int, float, np.floating, np.integer)):
        values = (values,)
    out = tuple(float(v) for v in values)
    for v in out:
        if not math.isfinite(v):
            raise ValueError(f"parameter vectors must be finite, got {v!r}")
    return out


def sorted_view(values) -> tuple:
    return tuple(sorted(as_params(values)))


def is_nonpositive_integer(x, tol=0.0) -> bool:
    r = round(x)
    return r <= 0 and abs(x - r) <= tol


def _le(x, y, rtol=PRED_RTOL):
    return x <= y + rtol * max(1.0, abs(x), abs(y))


# ---------------------------------------------------------------------------
# elementary symmetric polynomials and Pochhammer symbols


def elem_sym(values) -> list:
    """Elementary symmetric polynomials ``e_0, ..., e_n`` of ``values``.

    Built by multiplying out ``prod (x + a_i)`` one factor at a time, so
    ``e_k`` is the coefficient of ``x^(n-k)``.

    >>> elem_sym((1, 2, 3))
    [1.0, 6.0, 11.0, 6.0]
    """
    e = [1.0]
    for a in as_params(values):
        e = [1.0] + [e[k] + a * e[k - 1] for k in range(1, len(e))] + [a * e[-1]]
    return e


def esym(values, k: int) -> float:
    """``e_k(values)`` with ``e_0 = 1`` and ``e_k = 0`` outside ``0..n``."""
    e = elem_sym(values)
    if k < 0 or k >= len(e):
        return 0.0
    return e[k]


def rising_factorial(a: float, n: int) -> float:
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def log_rising_factorial(a: float, n: int):
    """Return ``(log|(a)_n|, sign)``; sign is 0 when the product vanishes."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0.0, 1
    if a > 0 and n > 256:
        return math.lgamma(a + n) - math.lgamma(a), 1
    sign = 1
    logs = []
    for k in range(n):
        x = a + k
        if x == 0.0:
            return -math.inf, 0
        if x < 0:
            sign = -sign
        logs.append(math.log(abs(x)))
    return math.fsum(logs), sign


def log_coeff_f(A, B, n: int):
    """``(log|f_n|, sign)`` with ``f_n = prod (a_i)_n / prod (b_j)_n``."""
    A, B = as_params(A), as_params(B)
    logs, sign = [], 1
    for b in B:
        lb, sb = log_rising_factorial(b, n)
        if sb == 0:
            raise PoleError(f"(b)_n vanishes for b={b}, n={n}")
        logs.append(-lb)
        sign *= sb
    for a in A:
        la, sa = log_rising_factorial(a, n)
        if sa == 0:
            return -math.inf, 0
        logs.append(la)
        sign *= sa
    return math.fsum(logs), sign


def coeff_f(A, B, n: int) -> float:
    lf, s = log_coeff_f(A, B, n)
    return 0.0 if s == 0 else s * math.exp(lf)


def log_coeff_sequence(A, B, nmax: int):
    """Vector of ``log|f_n|`` and signs for ``n = 0..nmax`` (cumulative sums)."""
    A, B = as_params(A), as_params(B)
    k = np.arange(nmax, dtype=float)
    step = np.zeros(nmax)
    sgn = np.ones(nmax)
    with np.errstate(divide="ignore"):
        for a in A:
            step += np.log(np.abs(a + k))
            sgn *= np.sign(a + k)
        for b in B:
            if np.any(b + k == 0):
                raise PoleError(f"(b)_n vanishes for b={b}")
            step -= np.log(np.abs(b + k))
            sgn *= np.sign(b + k)
    logf = np.concatenate([[0.0], np.cumsum(step)])
    sign = np.concatenate([[1.0], np.cumprod(sgn)])
    return logf, sign


def coeff_ratio(A, B, x):
    """``R(x) = prod (a_i + x) / prod (b_j + x)``, so that ``f_{n+1} = R(n) f_n``."""
    x = np.asarray(x, dtype=float)
    num = np.ones_like(x)
    den = np.ones_like(x)
    for a in as_params(A):
        num = num * (a + x)
    for b in as_params(B):
        den = den * (b + x)
    out = num / den
    return float(out) if out.ndim == 0 else out


def parametric_excess(A, B) -> float:
    """``sum(B) - sum(A)``."""
    return math.fsum(as_params(B)) - math.fsum(as_params(A))


# ---------------------------------------------------------------------------
# majorization and the v(t) condition


@dataclass(frozen=True)
class MajorizationResult:
    weak: bool
    witness: Optional[int]
    majorized: bool
    psi: float


def check_weak_supermajorization(A, B, tol=PRED_RTOL) -> MajorizationResult:
    """Test whether B is weakly supermajorized by A.

    Both vectors are sorted ascending (a view; callers keep their order) and
    the partial sums of A must not exceed those of B. ``witness`` is the first
    failing ``k`` (1-based).
    """
    A, B = as_params(A), as_params(B)
    if len(A) != len(B):
        raise DimensionMismatch(f"|A|={len(A)} but |B|={len(B)}")
    if any(v <= 0 for v in A + B):
        raise NonPositiveParameter("weak supermajorization needs positive entries")
    sa, sb = sorted(A), sorted(B)
    witness = None
    pa = pb = 0.0
    for k, (a, b) in enumerate(zip(sa, sb), start=1):
        pa += a
        pb += b
        if not _le(pa, pb, tol):
            witness = k
            break
    psi = parametric_excess(A, B)
    weak = witness is None
    majorized = weak and abs(psi) <= tol * max(1.0, math.fsum(A))
    return MajorizationResult(weak, witness, majorized, psi)


@dataclass(frozen=True)
class VCheck:
    v_min: float
    nonneg: bool
    psi: float
    t_min: float
    reason: str


def _v_grid(n):
    """Composite grid on (0, 1] expressed through ``u = -log t``."""
    n1 = n // 4
    n2 = n // 4
    n3 = n - n1 - n2
    u1 = -np.log1p(-np.geomspace(1e-9, 0.5, n1))  # geometric in 1 - t
    u2 = -np.log(np.linspace(0.02, 0.98, n2))
    u3 = np.geomspace(math.log(2.0), 1e8, n3)  # geometric in -log t
    return np.unique(np.concatenate([[0.0], u1, u2, u3]))


def v_function(A, B, t):
    """``v(t) = sum_j (t^{a_j} - t^{b_j})`` on ``t`` in (0, 1]."""
    A, B = as_params(A), as_params(B)
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    for a in A:
        out = out + t**a
    for b in B:
        out = out - t**b
    return out


def _leading_sign_at_zero(A, B, tol):
    """Sign of the dominant term of v as t -> 0 after cancelling equal exponents."""
    a_left = sorted(A)
    b_left = sorted(B)
    for b in list(b_left):
        for i, a in enumerate(a_left):
            if abs(a - b) <= tol * max(1.0, abs(a)):
                a_left.pop(i)
                b_left.remove(b)
                break
    if not a_left and not b_left:
        return 0
    ma = min(a_left) if a_left else math.inf
    mb = min(b_left) if b_left else math.inf
    return 1 if ma < mb else -1


def v_nonneg_check(A, B, grid_size: int = V_GRID_SIZE, tol: float = V_TOL) -> VCheck:
    """Numerically decide ``v(t) >= 0`` on (0, 1].

    Evaluates ``v`` scaled by ``t^{-m}`` (``m`` the smallest exponent) on a
    composite grid that is geometric in ``-log t`` towards 0 and geometric in
    ``1 - t`` towards 1, and adds the exact necessary conditions at both ends:
    ``v'(1) = -psi`` must be ``<= 0``, the dominant power at ``t -> 0`` must
    come from A, and when ``psi = 0`` the curvature at 1 must be nonnegative.
    """
    A, B = as_params(A), as_params(B)
    if len(A) != len(B):
        raise DimensionMismatch(f"|A|={len(A)} but |B|={len(B)}")
    psi = parametric_excess(A, B)
    if not A:
        return VCheck(0.0, True, psi, 1.0, "empty")
    m0 = min(A + B)
    u = _v_grid(grid_size)
    scaled = np.zeros_like(u)
    # e^x - e^y = expm1(x) - expm1(y) keeps accuracy as u -> 0
    for a, b in zip(A, B):
        scaled += np.expm1(-u * (a - m0)) - np.expm1(-u * (b - m0))
    with np.errstate(under="ignore"):
        actual = scaled * np.exp(-u * m0)
    i = int(np.argmin(actual))
    v_min = float(actual[i])
    t_min = float(np.exp(-u[i]))

    scale = max(1.0, max(abs(v) for v in A + B))
    if psi < -tol * scale:
        return VCheck(v_min, False, psi, t_min, "v'(1) = -psi > 0")
    if _leading_sign_at_zero(A, B, tol) < 0:
        return VCheck(v_min, False, psi, t_min, "dominant power at t=0 belongs to B")
    if abs(psi) <= tol * scale:
        curv = math.fsum(a * a for a in A) - math.fsum(b * b for b in B)
        if curv < -tol * scale * scale:
            return VCheck(v_min, False, psi, t_min, "psi = 0 and v''(1) < 0")
    j = int(np.argmin(scaled))
    if scaled[j] < -tol:
        return VCheck(v_min, False, psi, float(np.exp(-u[j])), "grid minimum negative")
    return VCheck(v_min, True, psi, t_min, "grid and endpoint tests pass")


# ---------------------------------------------------------------------------
# symmetric-polynomial chains


def symmetric_ratios(A, B):
    """``e_k(B)/e_k(A)`` for ``k = 1..q`` (equal lengths), or None on a zero denominator."""
    ea, eb = elem_sym(A), elem_sym(B)
    out = []
    for k in range(1, len(ea)):
        if ea[k] <= 0:
            return None
        out.append(eb[k] / ea[k])
    return out


def symmetric_geq1(A, B) -> Optional[bool]:
    """Each ``e_k(B) >= e_k(A)`` with all polynomials nonnegative."""
    A, B = as_params(A), as_params(B)
    if len(A) != len(B):
        return None
    ea, eb = elem_sym(A), elem_sym(B)
    if any(v < 0 for v in ea + eb):
        return False
    return all(_le(ea[k], eb[k]) for k in range(1, len(ea)))


def symmetric_chain(A, B) -> Optional[bool]:
    """``e_q(B)/e_q(A) >= ... >= e_1(B)/e_1(A) >= 1`` with nonnegative ``e_k``."""
    A, B = as_params(A), as_params(B)
    if len(A) != len(B):
        return None
    ea, eb = elem_sym(A), elem_sym(B)
    if any(v < 0 for v in ea + eb):
        return False
    r = symmetric_ratios(A, B)
    if r is None:
        return False
    if not r:
        return True
    if not _le(1.0, r[0]):
        return False
    return all(_le(r[k], r[k + 1]) for k in range(len(r) - 1))


def esym_dominance(A, B) -> Optional[bool]:
    """``e_{q-i}(B) >= e_{p-i}(A)`` for ``i = 0..p``; needs ``p < q``."""
    A, B = as_params(A), as_params(B)
    p, q = len(A), len(B)
    if p >= q:
        return None
    ea, eb = elem_sym(A), elem_sym(B)
    return all(_le(ea[p - i], eb[q - i]) for i in range(p + 1))


def ratio_chain_decreasing(A, B) -> Optional[bool]:
    """Chain making ``R(x) = prod(a+x)/prod(b+x)`` decreasing when ``p < q``.

    ``e_q(B)/e_p(A) <= e_{q-1}(B)/e_{p-1}(A) <= ... <= e_{q-p}(B)``.
    """
    A, B = as_params(A), as_params(B)
    p, q = len(A), len(B)
    if p >= q:
        return None
    ea, eb = elem_sym(A), elem_sym(B)
    if any(ea[p - i] <= 0 for i in range(p + 1)):
        return False
    r = [eb[q - i] / ea[p - i] for i in range(p + 1)]
    return all(_le(r[i], r[i + 1]) for i in range(p))


def q2_exact(A, B, tol=1e-10) -> Optional[bool]:
    """Necessary and sufficient test of ``v >= 0`` for two-element vectors."""
    A, B = as_params(A), as_params(B)
    if len(A) != 2 or len(B) != 2:
        return None
    psi = parametric_excess(A, B)
    return min(A) <= min(B) + tol and psi >= -tol


@dataclass(frozen=True)
class ConditionReport:
    psi: float
    weak_supermajorized: Optional[bool]
    weak_witness: Optional[int]
    majorized: Optional[bool]
    v_min: Optional[float]
    v_nonneg: Optional[bool]
    symmetric_chain: Optional[bool]
    symmetric_geq1: Optional[bool]
    esym_dominance: Optional[bool]
    ratio_chain_decreasing: Optional[bool]
    q2_exact: Optional[bool]
    q2_agrees: Optional[bool]

    def failed(self):
        """Names of applicable predicates that came out False."""
        names = (
            "weak_supermajorized", "majorized", "v_nonneg", "symmetric_chain",
            "symmetric_geq1", "esym_dominance", "ratio_chain_decreasing", "q2_exact",
        )
        return [n for n in names if getattr(self, n) is False]


def condition_report(A, B) -> ConditionReport:
    A, B = as_params(A), as_params(B)
    psi = parametric_excess(A, B)
    weak = witness = major = None
    v_min = v_ok = None
    if len(A) == len(B):
        if all(v > 0 for v in A + B):
            m = check_weak_supermajorization(A, B)
            weak, witness, major = m.weak, m.witness, m.majorized
        vc = v_nonneg_check(A, B)
        v_min, v_ok = vc.v_min, vc.nonneg
    q2 = q2_exact(A, B)
    return ConditionReport(
        psi=psi,
        weak_supermajorized=weak,
        weak_witness=witness,
        majorized=major,
        v_min=v_min,
        v_nonneg=v_ok,
        symmetric_chain=symmetric_chain(A, B),
        symmetric_geq1=symmetric_geq1(A, B),
        esym_dominance=esym_dominance(A, B),
        ratio_chain_decreasing=ratio_chain_decreasing(A, B),
        q2_exact=q2,
        q2_agrees=None if q2 is None else (q2 == v_ok),
    )


# ---------------------------------------------------------------------------
# rate constants for the p = q - 1 bounds


@dataclass(frozen=True)
class BesselRates:
    c: float
    d: float
    d_positive: bool
    ratios: tuple


def bessel_rates(A, B) -> BesselRates:
    """Extremes over ``i = 1..q`` of ``(e_i(B) - e_i(A)) / e_{i-1}(A)``.

    ``c`` (the max) makes ``f_n >= 1/(c)_n``; ``d`` (the min) makes
    ``f_n (d)_n <= 1`` when positive.
    """
    A, B = as_params(A), as_params(B)
    q = len(B)
    if len(A) != q - 1:
        raise ShapeError(f"need |A| = |B| - 1, got |A|={len(A)}, |B|={q}")
    if any(v <= 0 for v in A + B):
        raise NonPositiveParameter("rate constants need positive parameters")
    ea = elem_sym(A) + [0.0]
    eb = elem_sym(B)
    ratios = tuple((eb[i] - ea[i]) / ea[i - 1] for i in range(1, q + 1))
    c, d = max(ratios), min(ratios)
    return BesselRates(c=c, d=d, d_positive=d > 0, ratios=ratios)


def all_positive(*vectors: Sequence[float]) -> bool:
    return all(v > 0 for vec in vectors for v in as_params(vec))
