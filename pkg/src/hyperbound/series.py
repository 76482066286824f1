"""Power-series evaluation of pFq at real arguments.

The summation engine is vectorized over the argument: one pass of the term
recurrence serves a whole grid of x values, each point stopping on its own
tail bound. Points whose partial sums cancel badly are re-summed in
double-double arithmetic, then in decimal arithmetic with as many digits
as the observed cancellation needs; anything beyond that budget raises
:class:`NonConvergence` so callers can switch to an integral representation.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass

import numpy as np

from . import _dd
from .errors import DomainError, NonConvergence, PoleError, ShapeError
from .params import as_params, is_nonpositive_integer, log_coeff_f
from .results import EvalResult

DEFAULT_TOL = 1e-15
# partial-sum magnitude / result beyond which double precision is abandoned
CANCEL_ESCALATE = 1e8
MAX_TERMS = 200_000
MAX_TERMS_DD = 60_000
MAX_DIGITS = 400  # ceiling for the arbitrary-precision last resort
_U = 2.0**-53
_U_DD = 2.0**-104
_MONO_RUN = 5


@dataclass(frozen=True)
class HyperSpec:
    """Upper parameters ``A`` (length p) and lower parameters ``B`` (length q)."""

    A: tuple
    B: tuple

    def __init__(self, A=(), B=()):
        object.__setattr__(self, "A", as_params(A))
        object.__setattr__(self, "B", as_params(B))
        if self.p > self.q + 1:
            raise ShapeError(f"need p <= q+1, got p={self.p}, q={self.q}")
        for b in self.B:
            if is_nonpositive_integer(b):
                raise PoleError(f"lower parameter {b} is a nonpositive integer")

    @property
    def p(self):
        return len(self.A)

    @property
    def q(self):
        return len(self.B)

    @property
    def radius(self):
        return math.inf if self.p <= self.q else 1.0

    @property
    def psi(self):
        return math.fsum(self.B) - math.fsum(self.A)

    def shifted(self, n):
        return HyperSpec(tuple(a + n for a in self.A), tuple(b + n for b in self.B))

    def __repr__(self):
        return f"HyperSpec(A={self.A}, B={self.B})"


def _as_spec(spec, B=None):
    if isinstance(spec, HyperSpec):
        return spec
    return HyperSpec(spec, B)


def _ratio_float(A, B, k):
    num = 1.0
    for a in A:
        num *= a + k
    den = float(k + 1)
    for b in B:
        den *= b + k
    return num / den


def _ratio_dd(A, B, k):
    one = (np.array(1.0), np.array(0.0))
    num = one
    for a in A:
        num = _dd.mul(num, _dd.two_sum(np.array(a), np.array(float(k))))
    den = (np.array(float(k + 1)), np.array(0.0))
    for b in B:
        den = _dd.mul(den, _dd.two_sum(np.array(b), np.array(float(k))))
    return _dd.div(num, den)


class _TailTracker:
    """Decides when the geometric tail bound is trustworthy (scalar ratios)."""

    def __init__(self, A, B):
        self.k0 = int(math.ceil(max([abs(v) for v in A + B] + [0.0]))) + 2
        self.limit = 1.0 if len(A) == len(B) + 1 else 0.0
        self.gauss = len(A) == len(B) + 1
        self.hist = []

    def bound(self, k, next_ratio):
        """Return a bound on ``sup_{j>k} |rho_j|`` or None while unsettled."""
        r = abs(next_ratio)
        self.hist.append(r)
        if len(self.hist) > _MONO_RUN + 1:
            self.hist.pop(0)
        if r == 0.0:
            return 0.0
        if k < self.k0:
            return None
        if self.gauss:
            return max(r, self.limit)
        h = self.hist
        if len(h) <= _MONO_RUN or any(h[i + 1] > h[i] for i in range(len(h) - 1)):
            return None
        return r


def _sum_double(A, B, x, tol, max_terms):
    n = x.size
    s = np.ones(n)
    comp = np.zeros(n)
    term = np.ones(n)
    abs_sum = np.ones(n)
    weighted = np.ones(n)
    done = x == 0.0
    tail = np.zeros(n)
    used = np.ones(n, dtype=int)
    trk = _TailTracker(A, B)
    w = len(A) + len(B) + 3
    k = 0
    rho = _ratio_float(A, B, 0)
    with np.errstate(over="ignore", invalid="ignore"):
        while not done.all():
            if k >= max_terms:
                break
            act = ~done
            term = np.where(act, term * (rho * x), 0.0)
            # Neumaier compensated accumulation
            t = s + term
            big = np.abs(s) >= np.abs(term)
            comp += np.where(big, (s - t) + term, (term - t) + s)
            s = t
            at = np.abs(term)
            abs_sum += at
            weighted += at * (1.0 + w * math.sqrt(k + 1.0))
            used += act
            k += 1
            rho = _ratio_float(A, B, k)
            rb = trk.bound(k, rho)
            if not np.all(np.isfinite(term)):
                bad = ~np.isfinite(term)
                done |= bad
                s[bad] = np.nan
            if rb is not None:
                r = rb * np.abs(x)
                with np.errstate(divide="ignore"):
                    tb = np.where(r < 1.0, at * r / (1.0 - r), np.inf)
                val = np.abs(s + comp)
                newly = act & (tb <= tol * np.maximum(val, 1e-300))
                tail = np.where(newly, tb, tail)
                done |= newly
    value = s + comp
    conv = done & np.isfinite(value)
    err = tail + _U * weighted + _U * np.abs(value)
    return value, err, used, abs_sum, conv


def _sum_dd(A, B, x, tol, max_terms):
    n = x.size
    zero = np.zeros(n)
    s = (np.ones(n), zero.copy())
    term = (np.ones(n), zero.copy())
    weighted = np.ones(n)
    done = x == 0.0
    tail = np.zeros(n)
    used = np.ones(n, dtype=int)
    trk = _TailTracker(A, B)
    w = len(A) + len(B) + 3
    k = 0
    rho = _ratio_dd(A, B, 0)
    with np.errstate(over="ignore", invalid="ignore"):
        while not done.all():
            if k >= max_terms:
                break
            act = ~done
            nt = _dd.mul_d(_dd.mul(term, rho), x)
            term = (np.where(act, nt[0], 0.0), np.where(act, nt[1], 0.0))
            s = _dd.add(s, term)
            at = np.abs(term[0])
            weighted += at * (1.0 + w * math.sqrt(k + 1.0))
            used += act
            k += 1
            rho = _ratio_dd(A, B, k)
            rb = trk.bound(k, float(rho[0]))
            if rb is not None:
                r = rb * np.abs(x)
                with np.errstate(divide="ignore"):
                    tb = np.where(r < 1.0, at * r / (1.0 - r), np.inf)
                val = np.abs(s[0])
                newly = act & (tb <= tol * np.maximum(val, 1e-300))
                tail = np.where(newly, tb, tail)
                done |= newly
    value = _dd.to_float(s)
    conv = done & np.isfinite(value)
    err = tail + _U_DD * weighted + _U * np.abs(value)
    return value, err, used, conv


def _check_domain(spec, x):
    if spec.p == spec.q + 1 and np.any(np.abs(x) >= 1.0):
        raise DomainError(
            f"{spec.p}F{spec.q} series needs |x| < 1 (got max |x| = {np.max(np.abs(x))})"
        )


def _sum_decimal(A, B, x, tol, digits, max_terms):
    """Scalar summation in ``decimal`` at ``digits`` significant digits."""
    ctx = decimal.Context(prec=digits)
    D = ctx.create_decimal_from_float
    Ad = [D(a) for a in A]
    Bd = [D(b) for b in B]
    xd = D(x)
    s = D(1)
    term = D(1)
    weighted = 1.0
    trk = _TailTracker(A, B)
    w = len(A) + len(B) + 3
    for k in range(max_terms):
        kd = D(k)
        num = xd
        for a in Ad:
            num = ctx.multiply(num, ctx.add(a, kd))
        den = D(k + 1)
        for b in Bd:
            den = ctx.multiply(den, ctx.add(b, kd))
        term = ctx.divide(ctx.multiply(term, num), den)
        s = ctx.add(s, term)
        at = abs(float(term))
        weighted += at * (1.0 + w * math.sqrt(k + 1.0))
        rb = trk.bound(k + 1, _ratio_float(A, B, k + 1))
        if rb is not None:
            r = rb * abs(x)
            if r < 1.0:
                tb = at * r / (1.0 - r)
                val = abs(float(s))
                if tb <= tol * max(val, 1e-300):
                    err = tb + 10.0 ** (1 - digits) * weighted + _U * val
                    return float(s), err, k + 2, True
    return float(s), math.inf, max_terms + 1, False


def pfq_grid(spec, x, tol=DEFAULT_TOL, strict=True):
    """Evaluate pFq on an array of real arguments.

    Returns ``(values, abs_err, terms_used)`` arrays. With ``strict=False``
    failing points come back as NaN instead of raising.
    """
    spec = _as_spec(spec)
    if not tol > 0:
        raise ValueError("tol must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    _check_domain(spec, x)
    A, B = spec.A, spec.B
    val, err, used, abs_sum, conv = _sum_double(A, B, x, tol, MAX_TERMS)
    # points with heavy cancellation are redone in double-double
    budget = np.maximum(1e-8, 1e3 * tol) * np.maximum(np.abs(val), 1e-300)
    cancel = abs_sum > CANCEL_ESCALATE * np.abs(val)
    redo = (cancel | ~(err <= budget)) & np.isfinite(abs_sum)
    if np.any(redo):
        v2, e2, u2, c2 = _sum_dd(A, B, x[redo], tol, MAX_TERMS_DD)
        val[redo], err[redo], used[redo] = v2, e2, u2
        conv[redo] = c2
    budget = np.maximum(1e-8, 1e3 * tol) * np.maximum(np.abs(val), 1e-300)
    bad = ~conv | ~(err <= budget)
    for i in np.flatnonzero(bad & np.isfinite(abs_sum)):
        # digits lost to cancellation plus the target accuracy
        # the first guess uses the (possibly wrong) low-precision value
        guess = abs(val[i]) if np.isfinite(val[i]) else 1.0
        digits = int(math.log10(max(abs_sum[i], 1.0) / max(guess, 1e-300))) + 25
        while digits <= MAX_DIGITS:
            v3, e3, u3, c3 = _sum_decimal(A, B, float(x[i]), tol, digits, MAX_TERMS_DD)
            if not c3:
                break
            if e3 <= max(1e-8, 1e3 * tol) * max(abs(v3), 1e-300):
                val[i], err[i], used[i] = v3, e3, u3
                bad[i] = False
                break
            digits += int(math.log10(e3 / max(abs(v3), 1e-300))) + 20
    if np.any(bad):
        if strict:
            i = int(np.argmax(bad))
            raise NonConvergence(
                f"{spec!r} at x={x[i]!r}: series cancellation beyond the precision budget"
                f" (estimated error {err[i]:.3g}, value {val[i]:.6g})"
            )
        val = np.where(bad, np.nan, val)
    return val, err, used


def eval_pfq(spec, x: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """Sum the hypergeometric series at a real argument.

    Parameters
    ----------
    spec : HyperSpec
        Upper and lower parameter vectors.
    x : float
        Argument; ``|x| < 1`` is required when ``p = q + 1``.
    tol : float
        Relative truncation tolerance for the geometric tail bound.

    Returns
    -------
    EvalResult
        ``abs_err`` is the tail bound plus a rounding estimate. When the
        series loses too much to cancellation at a negative argument the
        value comes from an integral representation instead (see ``method``).
    """
    spec = _as_spec(spec)
    try:
        val, err, used = pfq_grid(spec, [x], tol)
    except NonConvergence:
        if not x < 0:
            raise
        from .representations import representation_fallback

        r = representation_fallback(spec.A, spec.B, x)
        if r is None:
            raise
        return r
    return EvalResult(float(val[0]), float(err[0]), int(used[0]), "series")


def pfq(A, B, x, tol=DEFAULT_TOL) -> float:
    """Shorthand returning just the value of pFq(A; B; x)."""
    return eval_pfq(HyperSpec(A, B), x, tol).value


def shift_factor(spec, n):
    """``(A)_n / (B)_n``, the factor in front of the n-th derivative."""
    lf, s = log_coeff_f(spec.A, spec.B, n)
    return 0.0 if s == 0 else s * math.exp(lf)


def derivative_pfq(spec, x: float, n: int, tol: float = DEFAULT_TOL) -> EvalResult:
    """n-th derivative in x via ``((A)_n/(B)_n) pFq(A+n; B+n; x)``."""
    spec = _as_spec(spec)
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    if n == 0:
        return eval_pfq(spec, x, tol)
    fac = shift_factor(spec, n)
    if fac == 0.0:
        return EvalResult(0.0, 0.0, 1, "series-shift")
    r = eval_pfq(spec.shifted(n), x, tol)
    return EvalResult(fac * r.value, abs(fac) * r.abs_err, r.terms_used, "series-shift")


def cos_n(n: int, z: float) -> float:
    """Generalized cosine ``sum_j (-1)^j z^{nj} / (nj)!``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    z = float(z)
    zn = z**n
    terms = [1.0]
    t = 1.0
    j = 0
    while True:
        denom = 1.0
        for i in range(1, n + 1):
            denom *= n * j + i
        t = -t * zn / denom
        j += 1
        terms.append(t)
        if abs(t) <= 1e-17 * max(abs(math.fsum(terms)), 1e-300) and n * j > abs(z):
            break
        if j > 100_000:
            raise NonConvergence("generalized cosine series did not settle")
    return math.fsum(terms)


def cos_n_hyper(n: int, z: float) -> float:
    """The same function through ``0F_{n-1}(-; 1/n, ..., (n-1)/n; -(z/n)^n)``."""
    B = tuple(i / n for i in range(1, n))
    return pfq((), B, -((z / n) ** n))
