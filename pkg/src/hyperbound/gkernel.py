"""Meijer G^{p,0}_{q,p} kernel densities on the positive half-line.

The kernel with bottom row ``a`` (numerator gammas) and top row ``b``
(denominator gammas) is the function whose Mellin transform is
``prod Gamma(a_i + s) / prod Gamma(b_j + s)``. Three shapes occur:

* ``balanced`` (equal row lengths): supported on (0, 1), zero for t >= 1;
* ``laplace`` (bottom longer than top): supported on (0, inf) with a
  stretched-exponential tail;
* ``zero`` (bottom shorter than top): identically zero.

Evaluation methods
------------------
residue
    Pole expansion ``sum_j C_j t^{a_j} F_j(t)``; bottom entries that
    coincide modulo integers are split symmetrically and the two split
    evaluations averaged.
endpoint
    Expansion in powers of ``1 - t`` around t = 1 (balanced only),
    ``t^{a} (1-t)^{psi-1} sum_n h_n (1-t)^n``. Its coefficients are
    polynomial in the parameters, so it has no trouble with coincident
    entries, and it resolves the (1-t)^{psi-1} endpoint law exactly.
mellin_barnes
    Direct quadrature of the inverse Mellin integral; a contour bent into
    the left half-plane for balanced kernels, a vertical line through the
    saddle point for laplace kernels at t >= 1.
closed_form
    The one-pair beta density and ``t^a e^{-t}``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy import optimize, special

from .errors import (
    ContourDivergence,
    DegenerateParameters,
    DomainError,
    NonConvergence,
    PoleError,
)
from .params import as_params, is_nonpositive_integer, v_nonneg_check
from .quad import QuadratureConfig, integrate_0inf_vec
from .results import EvalResult, Hypothesis, MonotoneReport
from .series import HyperSpec, pfq_grid

_U = 2.0**-53
# bottom entries closer than this modulo 1 are treated as coincident
CLUSTER_GAP = 2e-6
ENDPOINT_LOW = 0.05  # balanced kernels: expansion about t = 1 from here up
LAPLACE_SWITCH = 1.0  # laplace kernels: residue below, contour integral above
ENDPOINT_TERMS = 2000
PSI_ZERO_TOL = 1e-12
_MB_CFG = QuadratureConfig(rel_tol=1e-13, abs_tol=1e-300, max_levels=12)


def log_gamma_complex(z):
    """Principal branch of log Gamma(z) for complex ``z``.

    Thin wrapper over :func:`scipy.special.loggamma`, which is accurate to a
    few ulp across the plane; poles raise :class:`PoleError`.
    """
    arr = np.asarray(z, dtype=complex)
    pole = (arr.imag == 0) & (arr.real <= 0) & (arr.real == np.round(arr.real))
    if np.any(pole):
        raise PoleError(f"log-gamma pole at {arr[pole].ravel()[0].real:g}")
    out = special.loggamma(arr)
    return complex(out) if out.ndim == 0 else out


def _log_mellin(bottom, top, s):
    """``sum log Gamma(a+s) - sum log Gamma(b+s)`` on a complex array."""
    out = np.zeros_like(s, dtype=complex)
    for a in bottom:
        out += special.loggamma(a + s)
    for b in top:
        out -= special.loggamma(b + s)
    return out


def _reduce(bottom, top):
    """Cancel entries shared by both rows (their gamma factors cancel exactly)."""
    bot = list(bottom)
    tp = list(top)
    for b in list(tp):
        if b in bot:
            bot.remove(b)
            tp.remove(b)
    return tuple(sorted(bot)), tuple(sorted(tp))


@dataclass(frozen=True)
class KernelSpec:
    """Parameter rows of a G^{p,0}_{q,p} density.

    Parameters
    ----------
    bottom : sequence of float
        Row producing the numerator gammas ``Gamma(a + s)``.
    top : sequence of float
        Row producing the denominator gammas ``Gamma(b + s)``.
    """

    bottom: tuple
    top: tuple

    def __init__(self, bottom, top=()):
        object.__setattr__(self, "bottom", as_params(bottom))
        object.__setattr__(self, "top", as_params(top))
        if not self.bottom:
            raise DomainError("kernel needs at least one bottom parameter")

    @property
    def kind(self):
        p, q = len(self.bottom), len(self.top)
        if p == q:
            return "balanced"
        return "laplace" if p > q else "zero"

    @property
    def psi(self):
        return math.fsum(self.top) - math.fsum(self.bottom)

    @property
    def mu(self):
        return len(self.bottom) - len(self.top)

    @property
    def support(self):
        return {"balanced": (0.0, 1.0), "laplace": (0.0, math.inf), "zero": (0.0, 0.0)}[self.kind]

    @property
    def atom_at_one(self):
        """Mass of the point measure at t = 1 (balanced kernels with psi = 0)."""
        if self.kind == "balanced" and abs(self.psi) <= PSI_ZERO_TOL * max(1.0, max(map(abs, self.bottom))):
            return 1.0
        return 0.0

    @property
    def endpoint_exponents(self):
        """Algebraic strength at 0 and at 1 (balanced) or the tail power (laplace)."""
        asy = kernel_asymptotics(self)
        a0 = asy.zero_exponent if asy.zero_exponent is not None else 0.0
        if self.kind == "balanced":
            return (a0, self.psi - 1.0)
        if self.kind == "laplace":
            return (a0, (1.0 - asy.alpha) / asy.mu)
        return (0.0, 0.0)

    def leading_at_one(self):
        """``(psi - 1, 1/Gamma(psi))``: the kernel is ``~ c (1-t)^(psi-1)`` at t = 1."""
        if self.kind != "balanced":
            return None
        return self.psi - 1.0, float(special.rgamma(self.psi))

    def shifted(self, alpha):
        return KernelSpec([a + alpha for a in self.bottom], [b + alpha for b in self.top])

    def mellin(self, s):
        """Mellin transform ``prod Gamma(a+s) / prod Gamma(b+s)`` at real ``s``."""
        val = 1.0
        for a in self.bottom:
            val *= math.gamma(a + s)
        for b in self.top:
            val /= math.gamma(b + s)
        return val


@dataclass(frozen=True)
class ContourSpec:
    """Vertical integration line ``Re s = re_offset`` cut at ``|Im s| = height``."""

    re_offset: float
    height: float
    nodes: int = 256

    def validate(self, spec: KernelSpec):
        if not self.re_offset > -min(spec.bottom):
            raise DomainError("contour must pass to the right of all poles")
        if self.nodes < 32:
            raise DomainError("contour needs at least 32 nodes")
        if not self.height > 0:
            raise DomainError("contour height must be positive")


# ----------------------------------------------------------------------------
# residue expansion


def _clusters(values, gap=CLUSTER_GAP):
    """Group indices whose values agree modulo integers to within ``gap``."""
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            d = values[j] - values[i]
            if abs(d - round(d)) < gap:
                parent[find(j)] = find(i)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return [g for g in groups.values() if len(g) > 1]


def _split_size(m):
    # balances the O(eps^2) averaging bias against u / eps^(m-1) cancellation
    return max(2.0 * CLUSTER_GAP + 1e-7, (2.0 * _U) ** (1.0 / (m + 1)))


def _residue_plain(bottom, top, t, sign):
    """Pole sum for pairwise distinct (mod 1) bottom entries."""
    logt = np.log(t)
    total = np.zeros_like(t)
    mag = np.zeros_like(t)
    err = np.zeros_like(t)
    for j, aj in enumerate(bottom):
        others = [a for i, a in enumerate(bottom) if i != j]
        logc = 0.0
        sgn = 1.0
        dead = False
        for a in others:
            if is_nonpositive_integer(a - aj):
                raise DegenerateParameters(f"bottom entries {aj} and {a} differ by an integer")
            logc += special.gammaln(a - aj)
            sgn *= special.gammasgn(a - aj)
        for b in top:
            if is_nonpositive_integer(b - aj):
                dead = True  # 1/Gamma(b - a_j) vanishes: this pole is cancelled
                break
            logc -= special.gammaln(b - aj)
            sgn *= special.gammasgn(b - aj)
        if dead:
            continue
        spec = HyperSpec([1.0 + aj - b for b in top], [1.0 + aj - a for a in others])
        f, fe, _ = pfq_grid(spec, sign * t, strict=False)
        if np.any(~np.isfinite(f)):
            raise NonConvergence("residue series failed inside the kernel")
        with np.errstate(under="ignore", over="ignore"):
            scale = sgn * np.exp(logc + aj * logt)
        term = scale * f
        total += term
        mag += np.abs(term)
        err += np.abs(scale) * fe
    err += 4.0 * len(bottom) * _U * mag
    return total, err


def _residue(bottom, top, t, sign):
    groups = _clusters(bottom)
    if not groups:
        return _residue_plain(bottom, top, t, sign)
    shift = np.zeros(len(bottom))
    for g in groups:
        g = sorted(g, key=lambda i: bottom[i])
        eps = _split_size(len(g))
        for rank, i in enumerate(g):
            shift[i] = eps * (rank - 0.5 * (len(g) - 1))
    plus = tuple(np.asarray(bottom) + shift)
    minus = tuple(np.asarray(bottom) - shift)
    vp, ep = _residue_plain(plus, top, t, sign)
    vm, em = _residue_plain(minus, top, t, sign)
    eps = float(np.max(np.abs(shift)))
    val = 0.5 * (vp + vm)
    err = 0.5 * (ep + em) + eps * np.abs(vp - vm)
    return val, err


# ----------------------------------------------------------------------------
# expansion about t = 1


def _gamma_ratio(x, y):
    """Gamma(x) / Gamma(y) for arrays, zero where y is a pole."""
    with np.errstate(invalid="ignore", over="ignore"):
        r = special.gammasgn(x) * special.gammasgn(y) * np.exp(special.gammaln(x) - special.gammaln(y))
    ypole = (y <= 0) & (y == np.round(y))
    return np.where(ypole, 0.0, r)


def _pair_order(bottom, top):
    """Fold order for the expansion about t = 1, or None.

    Every running excess before the final fold enters a gamma function, so
    it must avoid the poles. Among admissible orders the one whose last
    pair carries the smallest live bottom entry is preferred: the series
    then tends to a log-type limit at t -> 0 instead of cancelling.
    """
    live = [a for a in bottom if not any(is_nonpositive_integer(b - a, 1e-12) for b in top)]
    target = min(live) if live else min(bottom)
    best = None
    for tops in itertools.islice(itertools.permutations(sorted(top)), 120):
        pairs = list(zip(sorted(bottom), tops))
        for order in itertools.islice(itertools.permutations(pairs), 120):
            run = np.cumsum([b - a for a, b in order[:-1]])
            if any(is_nonpositive_integer(r, 1e-9) for r in run):
                continue
            if order[-1][0] == target:
                return list(order)
            if best is None:
                best = list(order)
    return best


_ENDPOINT_CACHE: dict = {}


def _endpoint_coefficients(bottom, top, nterms=ENDPOINT_TERMS):
    """Prefactor exponent, psi and coefficients h_n of the expansion about 1.

    Pairs (a_k, b_k) are folded in one at a time (Mellin convolution with a
    beta density ``t^a (1-t)^{b-a-1} / Gamma(b-a)``). With the running
    excess ``psi_k`` the k-th partial kernel is
    ``t^{a_k} (1-t)^{psi_k - 1} sum_n h_n (1-t)^n`` and
    ``h_n <- Gamma(psi_{k-1}+n)/Gamma(psi_k+n) sum_m h_m (b_k - a_{k-1})_{n-m}/(n-m)!``.
    Returns None when every ordering hits a gamma pole.
    """
    key = (bottom, top, nterms)
    if key in _ENDPOINT_CACHE:
        return _ENDPOINT_CACHE[key]
    pairs = _pair_order(bottom, top)
    out = None
    if pairs is not None:
        n = np.arange(nterms, dtype=float)
        psi = pairs[0][1] - pairs[0][0]
        h = np.zeros(nterms)
        h[0] = special.rgamma(psi)
        for k in range(1, len(pairs)):
            a_prev = pairs[k - 1][0]
            a_k, b_k = pairs[k]
            beta = b_k - a_prev
            c = np.empty(nterms)
            c[0] = 1.0
            c[1:] = np.cumprod((beta + n[:-1]) / n[1:])
            ht = np.convolve(h, c)[:nterms]
            new_psi = psi + (b_k - a_k)
            h = ht * _gamma_ratio(psi + n, new_psi + n)
            psi = new_psi
        out = (pairs[-1][0], psi, h)
    _ENDPOINT_CACHE[key] = out
    if len(_ENDPOINT_CACHE) > 256:
        _ENDPOINT_CACHE.pop(next(iter(_ENDPOINT_CACHE)))
    return out


def _endpoint(bottom, top, t, w):
    coef = _endpoint_coefficients(bottom, top)
    if coef is None:
        return None
    a_last, psi, h = coef
    if np.any(w > 1.0 - ENDPOINT_LOW * 0.999):
        raise DomainError("expansion about t = 1 used too far from the endpoint")
    # term count from the worst point: |h_n| wmax^n small against the running sum
    wmax = float(np.max(w)) if w.size else 0.0
    nidx = np.arange(h.size)
    with np.errstate(divide="ignore", under="ignore"):
        bound = np.abs(h) * np.exp(nidx * math.log(wmax)) if wmax > 0 else np.abs(h) * (nidx == 0)
    run = np.cumsum(bound)
    small = bound <= 1e-18 * run
    # first index that starts a run of 8 negligible terms
    win = np.convolve(small.astype(int), np.ones(8, dtype=int), "valid")
    hits = np.flatnonzero(win == 8)
    if hits.size:
        N = int(hits[0]) + 8
    else:
        if bound[-1] > 1e-15 * run[-1]:
            raise NonConvergence("expansion about t = 1 did not settle")
        N = h.size
    with np.errstate(under="ignore"):
        P = np.power(w[:, None], nidx[None, :N])
    terms = P * h[None, :N]
    s = terms.sum(axis=1)
    mag = np.abs(terms).sum(axis=1)
    term = terms[:, -1]
    tail = 10.0 * np.abs(term) / (1.0 - w)
    with np.errstate(divide="ignore", over="ignore"):
        expo = a_last * np.log(t) + (psi - 1.0) * np.log(w)
        pref = np.exp(expo)
    val = pref * s
    err = np.abs(pref) * (tail + 4.0 * len(bottom) * _U * mag) + 4.0 * _U * np.abs(val) * (2.0 + np.abs(expo))
    return val, err


# ----------------------------------------------------------------------------
# Mellin-Barnes quadrature


def _mb_tilted(bottom, top, t, c0=None):
    """Loop contour ``c0 + y(-1 +- i)`` wrapped around the poles; needs t <= 1.

    By default the vertex sits just right of the rightmost pole, at a
    distance ``~ 1/|ln t|``; that keeps the integrand within a small factor
    of the result, so little is lost to cancellation.
    """
    d = complex(-1.0, 1.0)
    out = np.empty_like(t)
    err = np.empty_like(t)
    tail_power = math.fsum(bottom) - math.fsum(top) if len(bottom) == len(top) else 0.0
    cfg = _MB_CFG.with_exponents(0.0, tail_power)
    for i, ti in enumerate(t):
        lt = math.log(ti)
        c = c0
        if c is None:
            c = -min(bottom) + min(1.0, 1.0 / max(abs(lt), 1e-300))

        def f(y, lt=lt, c=c):
            s = c + y * d
            z = np.exp(_log_mellin(bottom, top, s) - s * lt) * d
            return z.imag

        v, e, _ = integrate_0inf_vec(f, 1.0 / max(abs(lt), 1.0), cfg)
        out[i] = v[0] / math.pi
        err[i] = e[0] / math.pi
    return out, err


def _saddle(bottom, top, t):
    """Real saddle of ``M(c) t^-c`` and the curvature of ``log M`` there."""
    lt = math.log(t)
    lo = -min(bottom)

    def slope(c):
        return sum(special.digamma(a + c) for a in bottom) - sum(special.digamma(b + c) for b in top) - lt

    hi = max(lo + 1.0, 1.0)
    while slope(hi) < 0:
        hi = lo + 2.0 * (hi - lo)
    c = optimize.brentq(slope, lo + 1e-12 * max(1.0, abs(lo)) + 1e-300, hi, xtol=1e-12)
    kappa = sum(special.polygamma(1, a + c) for a in bottom) - sum(special.polygamma(1, b + c) for b in top)
    return c, max(kappa, 1e-12)


def _mb_vertical(bottom, top, t, c0=None):
    """Vertical line through the real saddle of ``M(s) t^-s`` (laplace kernels)."""
    out = np.empty_like(t)
    err = np.empty_like(t)
    for i, ti in enumerate(t):
        c, kappa = _saddle(bottom, top, ti)
        if c0 is not None:
            c = c0
        lt = math.log(ti)

        def f(y, lt=lt, c=c):
            s = c + 1j * y
            return np.exp(_log_mellin(bottom, top, s) - s * lt).real

        v, e, _ = integrate_0inf_vec(f, 1.0 / math.sqrt(kappa), _MB_CFG)
        out[i] = v[0] / math.pi
        err[i] = e[0] / math.pi
    return out, err


def _mb_fixed(bottom, top, t, contour: ContourSpec):
    """Gauss-Legendre on a user-supplied truncated vertical line."""
    x, w = np.polynomial.legendre.leggauss(contour.nodes)
    y = 0.5 * contour.height * (x + 1.0)
    wy = 0.5 * contour.height * w
    s = contour.re_offset + 1j * y
    logm = _log_mellin(bottom, top, s)
    out = np.empty_like(t)
    for i, ti in enumerate(t):
        out[i] = np.sum(wy * np.exp(logm - s * math.log(ti)).real) / math.pi
    tail = np.exp(logm[-1].real - contour.re_offset * np.log(t)) * contour.height
    return out, np.abs(tail) + 1e-13 * np.abs(out)


def default_contour(spec: KernelSpec, t: float) -> ContourSpec:
    """The vertical line the adaptive laplace evaluator would use at ``t``."""
    b, tp = _reduce(spec.bottom, spec.top)
    if spec.kind == "laplace":
        c, kappa = _saddle(b, tp, max(t, 1.0))
        return ContourSpec(c, 60.0 / math.sqrt(kappa), 256)
    return ContourSpec(1.0 - min(b), 200.0, 256)


# ----------------------------------------------------------------------------
# closed forms


def _closed_form(bottom, top, t, w):
    if len(bottom) == 1 and len(top) == 1:
        a, b = bottom[0], top[0]
        with np.errstate(divide="ignore"):
            val = np.exp(a * np.log(t) + (b - a - 1.0) * np.log(w)) * special.rgamma(b - a)
        return val, 2e-15 * np.abs(val) * (1.0 + np.abs(np.log(t)) + abs(b - a - 1) * np.abs(np.log(w)))
    if len(bottom) == 1 and not top:
        a = bottom[0]
        val = np.exp(a * np.log(t) - t)
        return val, 2e-15 * np.abs(val) * (1.0 + t + abs(a) * np.abs(np.log(t)))
    raise DomainError(f"no closed form for bottom={bottom}, top={top}")


# ----------------------------------------------------------------------------
# public evaluation

_METHODS = ("auto", "residue", "mellin_barnes", "closed_form", "endpoint")


def kernel_values(spec: KernelSpec, t, method="auto", one_minus_t=None, contour=None):
    """Vectorized kernel evaluation.

    Parameters
    ----------
    spec : KernelSpec
    t : array_like
        Positive evaluation points.
    method : str
        One of ``auto``, ``residue``, ``mellin_barnes``, ``closed_form``,
        ``endpoint``.
    one_minus_t : array_like, optional
        ``1 - t`` computed without cancellation (quadrature nodes near 1).
    contour : ContourSpec, optional
        Fixed vertical line for ``mellin_barnes`` instead of the adaptive one.

    Returns
    -------
    values, abs_err : ndarray
    """
    if method not in _METHODS:
        raise ValueError(f"unknown method {method!r}")
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(~(t > 0)):
        raise DomainError("kernel argument must be positive")
    w = 1.0 - t if one_minus_t is None else np.atleast_1d(np.asarray(one_minus_t, dtype=float))
    vals = np.zeros_like(t)
    errs = np.zeros_like(t)
    kind = spec.kind
    if kind == "zero":
        return vals, errs
    bottom, top = _reduce(spec.bottom, spec.top)
    if not bottom:
        # all gamma factors cancelled: the measure is a unit atom at t = 1
        return vals, errs
    if contour is not None:
        contour.validate(KernelSpec(bottom, top))
    # nodes can have t == 1.0 in floating point while 1 - t > 0 is known exactly
    inside = w > 0.0 if kind == "balanced" else np.ones_like(t, dtype=bool)
    if not np.any(inside):
        return vals, errs
    ti, wi = t[inside], w[inside]

    if method == "closed_form":
        v, e = _closed_form(bottom, top, ti, wi)
    elif method == "residue":
        v, e = _residue(bottom, top, ti, (-1.0) ** (len(bottom) - len(top)))
    elif method == "endpoint":
        if kind != "balanced":
            raise DomainError("expansion about t = 1 applies to balanced kernels only")
        r = _endpoint(bottom, top, ti, wi)
        if r is None:
            raise DegenerateParameters("intermediate excess at a gamma pole")
        v, e = r
    elif method == "mellin_barnes":
        if kind == "balanced":
            psi = math.fsum(top) - math.fsum(bottom)
            if psi <= 1.0:
                raise ContourDivergence(f"contour integral needs psi > 1 (psi = {psi:g})")
        if contour is not None:
            v, e = _mb_fixed(bottom, top, ti, contour)
        elif kind == "balanced":
            v, e = _mb_tilted(bottom, top, ti, 1.0 - min(bottom))
        else:
            v, e = _mb_vertical(bottom, top, ti)
    else:
        v, e = _auto(bottom, top, kind, ti, wi)
    vals[inside] = v
    errs[inside] = e
    return vals, errs


def _auto(bottom, top, kind, t, w):
    v = np.empty_like(t)
    e = np.empty_like(t)
    if len(bottom) == 1 and len(top) <= 1:
        return _closed_form(bottom, top, t, w)
    clustered = bool(_clusters(bottom))
    todo = np.ones_like(t, dtype=bool)
    if kind == "balanced":
        near = t >= ENDPOINT_LOW
        if np.any(near):
            r = _endpoint(bottom, top, t[near], w[near])
            if r is not None:
                v[near], e[near] = r
                todo = ~near
        low = todo
    else:
        low = t <= LAPLACE_SWITCH
        far = ~low
        if np.any(far):
            v[far], e[far] = _mb_vertical(bottom, top, t[far])
    if np.any(low):
        if clustered:
            v[low], e[low] = _mb_tilted(bottom, top, t[low])
        else:
            v[low], e[low] = _residue(bottom, top, t[low], (-1.0) ** (len(bottom) - len(top)))
    return v, e


def _auto_name(spec, t):
    b, tp = _reduce(spec.bottom, spec.top)
    if spec.kind == "zero" or not b:
        return "zero"
    if len(b) == 1 and len(tp) <= 1:
        return "closed_form"
    if spec.kind == "balanced" and t >= ENDPOINT_LOW and _endpoint_coefficients(b, tp) is not None:
        return "endpoint"
    if spec.kind == "laplace" and t > LAPLACE_SWITCH:
        return "mellin_barnes"
    return "mellin_barnes" if _clusters(b) else "residue"


def kernel_eval(spec: KernelSpec, t: float, method: str = "auto", one_minus_t=None, contour=None) -> EvalResult:
    """Evaluate the kernel density at one point.

    Balanced kernels return exactly 0 for ``t >= 1`` without computation.

    Examples
    --------
    >>> round(kernel_eval(KernelSpec([1], [2]), 0.25).value, 12)
    0.25
    """
    spec = spec if isinstance(spec, KernelSpec) else KernelSpec(*spec)
    if spec.kind == "balanced" and (t >= 1.0 if one_minus_t is None else one_minus_t <= 0.0):
        return EvalResult(0.0, 0.0, 1, "support")
    v, e = kernel_values(spec, [t], method, None if one_minus_t is None else [one_minus_t], contour)
    name = _auto_name(spec, t) if method == "auto" else method
    return EvalResult(float(v[0]), float(e[0]), 1, name)


# ----------------------------------------------------------------------------
# asymptotics and positivity


@dataclass(frozen=True)
class KernelAsymptotics:
    zero_exponent: Optional[float]
    zero_log_power: int
    mu: Optional[int] = None
    alpha: Optional[float] = None
    one_exponent: Optional[float] = None

    def tail_envelope(self, t):
        """Leading t -> inf law of a laplace kernel."""
        mu, al = self.mu, self.alpha
        return (
            (2 * math.pi) ** (0.5 * (mu - 1))
            / math.sqrt(mu)
            * t ** ((1.0 - al) / mu)
            * math.exp(-mu * t ** (1.0 / mu))
        )


def kernel_asymptotics(spec: KernelSpec) -> KernelAsymptotics:
    """Small-t law ``t^a ln^{m-1} t`` and, for laplace kernels, the tail constants.

    Bottom entries ``a`` with ``a - b`` a nonnegative integer for some top
    entry produce no poles and are skipped.
    """
    live = [
        a for a in spec.bottom if not any(is_nonpositive_integer(b - a, 1e-12) for b in spec.top)
    ]
    if live:
        a0 = min(live)
        m = sum(1 for a in live if abs(a - a0) <= 1e-12 * max(1.0, abs(a0)))
    else:
        a0, m = None, 1
    if spec.kind == "laplace":
        mu = spec.mu
        alpha = spec.psi + 0.5 * (mu + 1)
        return KernelAsymptotics(a0, m - 1, mu, alpha)
    if spec.kind == "balanced":
        return KernelAsymptotics(a0, m - 1, one_exponent=spec.psi - 1.0)
    return KernelAsymptotics(a0, m - 1)


def nonneg_grid(points):
    """Composite grid on (0, 1) as ``(t, 1 - t)``.

    Geometric towards both endpoints (down to 1e-8), linear in between.
    """
    k = max(points // 3, 4)
    left = np.geomspace(1e-8, 0.05, k, endpoint=False)
    mid = np.linspace(0.05, 0.95, max(points - 2 * k, 2), endpoint=False)
    w_right = np.geomspace(0.05, 1e-8, k)
    t = np.concatenate([left, mid, 1.0 - w_right])
    w = np.concatenate([1.0 - left, 1.0 - mid, w_right])
    return t, w


def kernel_nonneg_scan(spec: KernelSpec, points: int = 256, tolerance: float = 1e-9) -> MonotoneReport:
    """Scan a balanced kernel on (0, 1) for negative values.

    The margin at each point is the kernel value divided by
    ``max(1, |value|)``, so the tolerance is absolute for moderate values
    and relative where the density blows up at an endpoint.
    """
    if spec.kind != "balanced":
        raise DomainError("positivity scan applies to balanced kernels")
    t, w = nonneg_grid(points)
    vals, errs = kernel_values(spec, t, one_minus_t=w)
    margin = vals / np.maximum(1.0, np.abs(vals))
    i = int(np.argmin(margin))
    vc = v_nonneg_check(spec.bottom, spec.top)
    hyp = [Hypothesis("v_nonneg", vc.nonneg, {"v_min": vc.v_min, "t_min": vc.t_min})]
    negative = [
        {"t": float(t[j]), "value": float(vals[j])} for j in np.flatnonzero(margin < -tolerance)[:20]
    ]
    return MonotoneReport(
        kind="kernel_nonneg",
        grid={"points": int(t.size), "t_min": float(t[0]), "t_max": float(t[-1])},
        min_margin=float(margin[i]),
        tolerance=tolerance,
        passed=bool(margin[i] >= -tolerance),
        worst={"t": float(t[i]), "value": float(vals[i]), "abs_err": float(errs[i])},
        hypotheses=hyp,
        failures=negative,
    )
