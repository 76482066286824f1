"""Integral representations of pFq(-z) against G-function kernels.

Every representation has the shape

    pFq(A; B; -z) = C * integral of  K(z t) G(t) dt / t  (+ an atom at t = 1)

with an elementary or hypergeometric kernel ``K`` and a G-function density
``G`` from :mod:`hyperbound.gkernel`. The z-argument is vectorized: one set
of quadrature nodes (and kernel evaluations) serves a whole grid of z.

Besides cross-checking the series, the representations give values of
pFq outside the reach of the power series; :func:`hyp_eval` falls back on
them when summation gives up.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from .errors import (
    ConvergenceConditionViolated,
    DomainError,
    NonConvergence,
    ShapeError,
    SpecViolation,
)
from .gkernel import KernelSpec, kernel_asymptotics, kernel_values
from .params import as_params, is_nonpositive_integer
from .quad import QuadratureConfig, integrate_01_vec, integrate_0inf_vec
from .results import EvalResult
from .series import HyperSpec, eval_pfq, pfq_grid

REP_CONFIG = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-15, max_levels=10)
PSI_TOL = 1e-12
_SQRT_PI = math.sqrt(math.pi)


def _gamma_quotient(num, den):
    """``prod Gamma(num) / prod Gamma(den)`` evaluated in log space."""
    lg = math.fsum(special.gammaln(b) for b in num) - math.fsum(special.gammaln(a) for a in den)
    sgn = 1.0
    for v in list(num) + list(den):
        sgn *= special.gammasgn(v)
    return sgn * math.exp(lg)


def _require_positive(vec, name):
    if any(not v > 0 for v in vec):
        raise SpecViolation(f"{name} must be positive element-wise, got {vec}")


# ----------------------------------------------------------------------------
# hypergeometric kernels K(x) evaluated on arrays of x = -z t


def _inner_kernel(A1, B1, x):
    """Values of p1Fq1(A1; B1; x) on an array, with closed forms where cheap."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    p1, q1 = len(A1), len(B1)
    if p1 == 0 and q1 == 0:
        v = np.exp(flat)
        return v.reshape(x.shape), (4e-16 * np.abs(v) * (1 + np.abs(flat))).reshape(x.shape)
    if p1 == 1 and q1 == 0:
        if np.any(flat >= 1.0):
            raise DomainError("1F0 kernel evaluated on its branch cut")
        v = np.exp(-A1[0] * np.log1p(-flat))
        return v.reshape(x.shape), (4e-16 * np.abs(v) * (1 + abs(A1[0]) * np.abs(np.log1p(-flat)))).reshape(x.shape)
    if p1 == 0 and q1 == 1 and B1[0] == 0.5:
        r = np.sqrt(np.abs(flat))
        v = np.where(flat <= 0, np.cos(2 * r), np.cosh(2 * r))
        return v.reshape(x.shape), (4e-16 * (1 + 2 * r) * np.maximum(np.abs(v), 1.0)).reshape(x.shape)
    spec = HyperSpec(A1, B1)
    vals = np.empty_like(flat)
    errs = np.empty_like(flat)
    ok = np.ones(flat.shape, dtype=bool)
    if p1 == q1 + 1:
        ok = np.abs(flat) < 0.9
    if np.any(ok):
        v, e, _ = pfq_grid(spec, flat[ok], strict=False)
        vals[ok], errs[ok] = v, e
    bad = ~ok | ~np.isfinite(vals)
    for i in np.flatnonzero(bad):
        r = hyp_eval(A1, B1, float(flat[i]))
        vals[i], errs[i] = r.value, r.abs_err
    return vals.reshape(x.shape), errs.reshape(x.shape)


# ----------------------------------------------------------------------------
# integration engines


def _zero_log_exponent(kspec):
    asy = kernel_asymptotics(kspec)
    a0 = asy.zero_exponent if asy.zero_exponent is not None else 1.0
    # a log factor at 0 behaves like a slightly stronger power
    return a0 - 0.02 * asy.zero_log_power


def _settle(run, cfg):
    """Run a quadrature; if it stalls, retry once at a 100x looser tolerance.

    Kernel values carry ~1e-13 relative noise, so a small integral can stall
    just above its target. The returned error still covers the last change.
    """
    try:
        return run(cfg)
    except NonConvergence:
        return run(QuadratureConfig(cfg.rel_tol * 100, cfg.abs_tol * 100, cfg.max_levels, cfg.endpoint_exponents))


def _balanced_integral(kspec, weight, m, cfg):
    """``int_0^1 W(t) G(t) dt/t`` for ``m`` weight columns, atom included.

    ``weight(t, w)`` returns an ``(n, m)`` array; ``w = 1 - t`` exactly.
    """
    vals = np.zeros(m)
    errs = np.zeros(m)
    nodes = 1
    at_one = np.asarray(weight(np.array([1.0]), np.array([0.0])), dtype=float).reshape(m)
    if kspec.atom_at_one:
        vals += at_one
    if not _has_continuous_part(kspec):
        return vals, errs, nodes

    # with psi ~ 0 the term (1-t)^(psi-1)/Gamma(psi) is the atom smeared into
    # an unreachable sliver at t = 1; it is dropped since the atom is added above
    smear = float(special.rgamma(kspec.psi)) if kspec.atom_at_one else 0.0

    def f(t, w):
        g, ge = kernel_values(kspec, t, one_minus_t=w)
        W = np.asarray(weight(t, w), dtype=float).reshape(t.size, m)
        body = W * (g / t)[:, None]
        if smear:
            body = body - smear * np.power(w, kspec.psi - 1.0)[:, None] * at_one[None, :]
        return np.hstack([body, np.abs(W) * (ge / t)[:, None]])

    a0 = _zero_log_exponent(kspec)
    a1 = kspec.psi - 1.0
    lead = None
    if kspec.atom_at_one:
        a1 = max(kspec.psi, 0.0)
    elif a1 < -0.5:
        c = at_one * special.rgamma(kspec.psi)
        lead = (a1, np.concatenate([c, np.zeros(m)]))
    v, e, nodes = _settle(lambda c: integrate_01_vec(f, c.with_exponents(a0 - 1.0, a1), True, lead, control=m), cfg)
    vals += v[:m]
    errs += e[:m] + np.abs(v[m:])
    return vals, errs, nodes


def _has_continuous_part(kspec):
    from .gkernel import _reduce

    bottom, _ = _reduce(kspec.bottom, kspec.top)
    return bool(bottom) and kspec.kind != "zero"


def _laplace_integral(kspec, weight, m, cfg, rate):
    """``int_0^inf W(t) G(t) dt/t`` for a laplace-kind kernel.

    Integrated in ``r = t^(1/mu)``, where the kernel tail ``exp(-mu r)`` is
    exponential; ``rate`` is the net exponential decay rate in ``r``.
    """
    mu = kspec.mu
    asy = kernel_asymptotics(kspec)
    a0 = _zero_log_exponent(kspec)

    def f(r):
        t = r**mu
        g, ge = kernel_values(kspec, t)
        with np.errstate(over="ignore"):
            W = np.asarray(weight(t, None), dtype=float).reshape(t.size, m)
        fac = mu / r
        # far out the kernel underflows to 0 while a growing weight overflows
        dead = (g == 0.0)[:, None]
        W = np.where(dead, 0.0, W)
        return np.hstack([W * (g * fac)[:, None], np.abs(W) * (ge * fac)[:, None]])

    tail = max(1.0 - asy.alpha, 0.0) + 2.0
    v, e, nodes = _settle(lambda c: integrate_0inf_vec(f, 1.0 / rate, c.with_exponents(mu * a0 - 1.0, tail), control=m), cfg)
    return v[:m], e[:m] + np.abs(v[m:]), nodes


def _finish(pref, vals, errs, nodes, method):
    vals = pref * vals
    errs = abs(pref) * errs + 4e-16 * np.abs(vals)
    return vals, errs, nodes, method


def _as_grid(z):
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if z.ndim != 1:
        raise ShapeError("z must be a scalar or a 1-d grid")
    return z


def _scalar(res):
    vals, errs, nodes, method = res
    return EvalResult(float(vals[0]), float(errs[0]), max(int(nodes), 1), method)


# ----------------------------------------------------------------------------
# generalized Stieltjes transform


def stieltjes_rep_grid(sigma, A, B, z, cfg: QuadratureConfig = REP_CONFIG):
    """``q+1Fq(sigma, A; B; -z)`` on a z-grid via the Stieltjes transform.

    Valid for every ``z > -1``, in particular beyond the unit disk.
    Returns ``(values, abs_err, nodes, method)``.
    """
    A, B = as_params(A), as_params(B)
    z = _as_grid(z)
    if len(A) != len(B):
        raise ShapeError("Stieltjes form needs |A| = |B|")
    if not sigma > 0:
        raise SpecViolation("sigma must be positive")
    _require_positive(A, "A")
    if np.any(~(z > -1.0)):
        raise SpecViolation("Stieltjes form needs z > -1 (z <= -1 lies on the cut)")
    m = z.size

    def weight(t, w):
        return np.exp(-sigma * np.log1p(np.outer(t, z)))

    if not A:
        return _finish(1.0, weight(np.array([1.0]), None)[0], np.zeros(m), 1, "stieltjes")
    kspec = KernelSpec(A, B)
    _check_psi(kspec)
    v, e, n = _balanced_integral(kspec, weight, m, cfg)
    return _finish(_gamma_quotient(B, A), v, e, n, "stieltjes")


def stieltjes_rep_eval(sigma, A, B, z: float, cfg: QuadratureConfig = REP_CONFIG) -> EvalResult:
    """Scalar version of :func:`stieltjes_rep_grid`."""
    return _scalar(stieltjes_rep_grid(sigma, A, B, [z], cfg))


def _check_psi(kspec, need_positive=False):
    psi = kspec.psi
    if psi < -PSI_TOL or (need_positive and psi <= PSI_TOL):
        raise SpecViolation(f"kernel excess psi = {psi:g} must be {'>' if need_positive else '>='} 0")


# ----------------------------------------------------------------------------
# general split representation


@dataclass(frozen=True)
class SplitSpec:
    """Partition of the parameters into kernel side (A1, B1) and measure side (A2, B2)."""

    A1: tuple
    B1: tuple
    A2: tuple
    B2: tuple
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    def __init__(self, A1=(), B1=(), A2=(), B2=()):
        for name, v in (("A1", A1), ("B1", B1), ("A2", A2), ("B2", B2)):
            object.__setattr__(self, name, as_params(v))
        object.__setattr__(self, "meta", {})
        p1, q1, p2, q2 = len(self.A1), len(self.B1), len(self.A2), len(self.B2)
        if p2 < 1:
            raise SpecViolation("measure side needs at least one upper parameter")
        if p2 < q2:
            raise SpecViolation("measure side needs p2 >= q2 (otherwise the kernel vanishes)")
        if p1 + p2 > q1 + q2 + 1:
            raise SpecViolation("need p <= q + 1")
        if any(not a > 0 for a in self.A2):
            raise SpecViolation("A2 must be positive")
        if p2 == q2 and self.psi2 < -PSI_TOL:
            raise SpecViolation(f"balanced measure needs psi2 >= 0, got {self.psi2:g}")
        for b in self.B1 + self.B2:
            if is_nonpositive_integer(b):
                raise SpecViolation(f"lower parameter {b} is a nonpositive integer")

    @property
    def psi2(self):
        return math.fsum(self.B2) - math.fsum(self.A2)

    @property
    def kernel(self):
        return KernelSpec(self.A2, self.B2)

    @property
    def full(self):
        return HyperSpec(self.A1 + self.A2, self.B1 + self.B2)

    def shifted(self, mu):
        """The same split with ``mu`` added to A2 and B2."""
        return SplitSpec(self.A1, self.B1, [a + mu for a in self.A2], [b + mu for b in self.B2])

    def check_z(self, z):
        """Raise SpecViolation unless the representation converges at every z."""
        z = _as_grid(z)
        p1, q1 = len(self.A1), len(self.B1)
        balanced = len(self.A2) == len(self.B2)
        if p1 == q1 + 1 and np.any(z <= -1.0):
            raise SpecViolation("kernel pFq with p1 = q1 + 1 needs z > -1")
        if not balanced:
            if p1 == q1 + 1 and np.any(z < 0):
                raise SpecViolation("semi-infinite form with p1 = q1 + 1 needs z >= 0")
            if np.any(z < 0) and self._growth_rate(float(np.min(z))) >= self.kernel.mu:
                raise SpecViolation("kernel growth outpaces the measure's decay at this z")
        return z

    def _growth_rate(self, zmin):
        # K(-z t) for z < 0 grows like exp(nu (|z| t)^(1/nu)), nu = q1 - p1 + 1
        nu = len(self.B1) - len(self.A1) + 1
        mu = self.kernel.mu
        if nu > mu:
            return 0.0
        if nu < mu:
            return math.inf
        return nu * abs(zmin) ** (1.0 / nu)


def general_split_grid(split: SplitSpec, z, cfg: QuadratureConfig = REP_CONFIG):
    """pFq(A1, A2; B1, B2; -z) on a z-grid through the split representation."""
    z = split.check_z(z)
    m = z.size
    kspec = split.kernel
    pref = _gamma_quotient(split.B2, split.A2)

    def weight(t, w):
        return _inner_kernel(split.A1, split.B1, -np.outer(t, z))[0]

    if kspec.kind == "balanced":
        v, e, n = _balanced_integral(kspec, weight, m, cfg)
        return _finish(pref, v, e, n, "split-unit" if kspec.psi > PSI_TOL else "split-atom")
    mu = kspec.mu
    zmin = float(np.min(z))
    rate = mu - (split._growth_rate(zmin) if zmin < 0 else 0.0)
    if len(split.A1) == 0 and len(split.B1) == 0 and mu == 1:
        rate = 1.0 + zmin
    v, e, n = _laplace_integral(kspec, weight, m, cfg, max(rate, 1e-3))
    return _finish(pref, v, e, n, "split-halfline")


def general_split_eval(split: SplitSpec, z: float, cfg: QuadratureConfig = REP_CONFIG) -> EvalResult:
    """Scalar version of :func:`general_split_grid`."""
    return _scalar(general_split_grid(split, [z], cfg))


# ----------------------------------------------------------------------------
# Laplace and cosine transforms

LAPLACE_VARIANTS = ("q_plus_1", "q_q", "q_q_psi0")
COSINE_VARIANTS = ("psi_gt_half", "psi_eq_half")


def laplace_rep_grid(A, B, z, variant="q_q", cfg: QuadratureConfig = REP_CONFIG):
    """pFq(A; B; -z) as a Laplace transform of a G-function measure.

    Variants
    --------
    q_plus_1
        |A| = |B| + 1, integral over (0, inf); needs z > -1.
    q_q
        |A| = |B| with psi > 0, integral over (0, 1); any real z.
    q_q_psi0
        |A| = |B| with psi = 0: the same plus an ``exp(-z)`` atom at t = 1.
    """
    A, B = as_params(A), as_params(B)
    if variant not in LAPLACE_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    _require_positive(A, "A")
    z = _as_grid(z)
    psi = math.fsum(B) - math.fsum(A)
    if variant == "q_plus_1":
        if len(A) != len(B) + 1:
            raise ShapeError("variant q_plus_1 needs |A| = |B| + 1")
        if np.any(~(z > -1.0)):
            raise SpecViolation("semi-infinite Laplace form needs z > -1")
    else:
        if len(A) != len(B):
            raise ShapeError(f"variant {variant} needs |A| = |B|")
        if variant == "q_q" and not psi > PSI_TOL:
            raise SpecViolation(f"variant q_q needs psi > 0, got {psi:g}")
        if variant == "q_q_psi0" and abs(psi) > PSI_TOL * max(1.0, max(map(abs, A), default=1.0)):
            raise SpecViolation(f"variant q_q_psi0 needs psi = 0, got {psi:g}")
    m = z.size
    pref = _gamma_quotient(B, A)

    def weight(t, w):
        return np.exp(-np.outer(t, z))

    kspec = KernelSpec(A, B)
    if variant == "q_plus_1":
        v, e, n = _laplace_integral(kspec, weight, m, cfg, 1.0 + float(np.min(z)))
    else:
        v, e, n = _balanced_integral(kspec, weight, m, cfg)
    return _finish(pref, v, e, n, f"laplace-{variant}")


def laplace_rep_eval(A, B, z: float, variant="q_q", cfg: QuadratureConfig = REP_CONFIG) -> EvalResult:
    """Scalar version of :func:`laplace_rep_grid`."""
    return _scalar(laplace_rep_grid(A, B, [z], variant, cfg))


def cosine_rep_grid(A, B, z, variant="psi_gt_half", cfg: QuadratureConfig = REP_CONFIG):
    """``q-1Fq(A; B; -z)`` as a cosine transform.

    The measure has bottom row ``(A, 1/2)``; ``psi_eq_half`` adds the
    ``cos(2 sqrt z)`` atom. Negative z is accepted (the kernel becomes
    ``cosh(2 sqrt(|z| t))``).
    """
    A, B = as_params(A), as_params(B)
    if variant not in COSINE_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if len(A) != len(B) - 1:
        raise ShapeError("cosine form needs |A| = |B| - 1")
    _require_positive(A, "A")
    psi = math.fsum(B) - math.fsum(A)
    if variant == "psi_gt_half" and not psi > 0.5 + PSI_TOL:
        raise SpecViolation(f"variant psi_gt_half needs psi > 1/2, got {psi:g}")
    if variant == "psi_eq_half" and abs(psi - 0.5) > PSI_TOL * max(1.0, psi):
        raise SpecViolation(f"variant psi_eq_half needs psi = 1/2, got {psi:g}")
    z = _as_grid(z)
    m = z.size
    kspec = KernelSpec(A + (0.5,), B)
    pref = _gamma_quotient(B, A) / _SQRT_PI

    def weight(t, w):
        return _inner_kernel((), (0.5,), -np.outer(t, z))[0]

    v, e, n = _balanced_integral(kspec, weight, m, cfg)
    return _finish(pref, v, e, n, f"cosine-{variant}")


def cosine_rep_eval(A, B, z: float, variant="psi_gt_half", cfg: QuadratureConfig = REP_CONFIG) -> EvalResult:
    """Scalar version of :func:`cosine_rep_grid`."""
    return _scalar(cosine_rep_grid(A, B, [z], variant, cfg))


def small_p_rep_grid(A, B, alphas, z, cfg: QuadratureConfig = REP_CONFIG):
    """pFq(A; B; -z) for p < q with artificial lower parameters ``alphas``.

    The kernel is ``0F_{q-p}(-; alphas; -z t)`` and the measure has bottom
    row ``(A, alphas)``. With ``alphas = (1/n, ..., (n-1)/n)`` the kernel is
    the generalized cosine.
    """
    A, B, al = as_params(A), as_params(B), as_params(alphas)
    if not len(A) < len(B):
        raise ShapeError("artificial-parameter form needs p < q")
    if len(al) != len(B) - len(A):
        raise ShapeError(f"need q - p = {len(B) - len(A)} artificial parameters, got {len(al)}")
    _require_positive(A, "A")
    _require_positive(al, "alphas")
    excess = math.fsum(B) - math.fsum(A) - math.fsum(al)
    if not excess > 0:
        raise ConvergenceConditionViolated(
            f"need sum(B) > sum(A) + sum(alphas); excess is {excess:g}"
        )
    z = _as_grid(z)
    m = z.size
    kspec = KernelSpec(A + al, B)
    pref = _gamma_quotient(B, A + al)

    def weight(t, w):
        return _inner_kernel((), al, -np.outer(t, z))[0]

    v, e, n = _balanced_integral(kspec, weight, m, cfg)
    return _finish(pref, v, e, n, "small-p")


def small_p_rep_eval(A, B, alphas, z: float, cfg: QuadratureConfig = REP_CONFIG) -> EvalResult:
    """Scalar version of :func:`small_p_rep_grid`."""
    return _scalar(small_p_rep_grid(A, B, alphas, [z], cfg))


def cosine_alphas(n: int):
    """Artificial parameters ``(1/n, ..., (n-1)/n)`` of the generalized cosine kernel."""
    return tuple(i / n for i in range(1, n))


# ----------------------------------------------------------------------------
# fallback evaluation and cross-validation


def hyp_eval(A, B, x: float, tol: float = 1e-15) -> EvalResult:
    """pFq(A; B; x) by series, switching to a representation when summation fails.

    The fallbacks cover negative arguments: the Stieltjes form for
    ``p = q + 1`` (including ``x <= -1``), the Laplace form for ``p = q``
    and the cosine form for ``p = q - 1``.
    """
    A, B = as_params(A), as_params(B)
    spec = HyperSpec(A, B)
    try:
        return eval_pfq(spec, x, tol)
    except (NonConvergence, DomainError) as exc:
        if not x < 0:
            raise
        first = exc
    r = representation_fallback(A, B, x, tol)
    if r is None:
        raise first
    return r


def representation_fallback(A, B, x: float, tol: float = 1e-15):
    """pFq(A; B; x) for ``x < 0`` without the series, or None when no form applies."""
    A, B = as_params(A), as_params(B)
    z = -x
    p, q = len(A), len(B)
    psi = math.fsum(B) - math.fsum(A)
    if p == 1 and q == 1:
        # Kummer: 1F1(a; b; -z) = e^(-z) 1F1(b - a; b; z), a series without cancellation
        try:
            r = eval_pfq(HyperSpec((B[0] - A[0],), B), z, tol)
            scale = math.exp(-z)
            return EvalResult(scale * r.value, scale * r.abs_err + 4e-16 * z * abs(scale * r.value), r.terms_used, "kummer")
        except (NonConvergence, DomainError, OverflowError):
            pass
    try:
        if p == q + 1:
            # pull out the upper parameter that leaves the largest excess
            k = int(np.argmax(A))
            rest = A[:k] + A[k + 1 :]
            return stieltjes_rep_eval(A[k], rest, B, z)
        if p == q and all(a > 0 for a in A):
            if psi > PSI_TOL:
                return laplace_rep_eval(A, B, z, "q_q")
            if abs(psi) <= PSI_TOL:
                return laplace_rep_eval(A, B, z, "q_q_psi0")
        if p == q - 1 and all(a > 0 for a in A):
            if psi > 0.5 + PSI_TOL:
                return cosine_rep_eval(A, B, z, "psi_gt_half")
            if abs(psi - 0.5) <= PSI_TOL:
                return cosine_rep_eval(A, B, z, "psi_eq_half")
    except (SpecViolation, NonConvergence):
        pass
    return None


def _fallback_grid(A, B, z):
    """Representation values of pFq(A; B; -z) on a grid of z > 0, or None."""
    p, q = len(A), len(B)
    psi = math.fsum(B) - math.fsum(A)
    if not all(a > 0 for a in A):
        return None
    try:
        if p == q + 1:
            k = int(np.argmax(A))
            return stieltjes_rep_grid(A[k], A[:k] + A[k + 1 :], B, z)[:2]
        if p == q:
            if psi > PSI_TOL:
                return laplace_rep_grid(A, B, z, "q_q")[:2]
            if abs(psi) <= PSI_TOL:
                return laplace_rep_grid(A, B, z, "q_q_psi0")[:2]
        if p == q - 1:
            if psi > 0.5 + PSI_TOL:
                return cosine_rep_grid(A, B, z, "psi_gt_half")[:2]
            if abs(psi - 0.5) <= PSI_TOL:
                return cosine_rep_grid(A, B, z, "psi_eq_half")[:2]
    except (SpecViolation, NonConvergence):
        return None
    return None


def hyp_grid(A, B, x, tol: float = 1e-15):
    """Vectorized :func:`hyp_eval`: ``(values, abs_err)`` on an array of x.

    Points the series cannot handle are evaluated together through one
    representation; any that remain unresolved come back as NaN.
    """
    A, B = as_params(A), as_params(B)
    spec = HyperSpec(A, B)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    vals = np.full(x.shape, np.nan)
    errs = np.full(x.shape, np.inf)
    ok = np.abs(x) < 1.0 if spec.p == spec.q + 1 else np.ones(x.shape, dtype=bool)
    if np.any(ok):
        v, e, _ = pfq_grid(spec, x[ok], tol, strict=False)
        vals[ok], errs[ok] = v, e
    todo = ~np.isfinite(vals) & (x < 0)
    if np.any(todo):
        res = _fallback_grid(A, B, -x[todo])
        if res is not None:
            vals[todo], errs[todo] = res
    return vals, errs


@dataclass
class RepReport:
    """Discrepancy between a representation and the series over a z-grid."""

    name: str
    z: list
    rep: list
    series: list
    budget: list
    max_abs: float
    max_rel: float
    failures: list

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {k: getattr(self, k) for k in ("name", "z", "rep", "series", "budget", "max_abs", "max_rel", "failures")}


_REPS = {
    "stieltjes": lambda kw, z: stieltjes_rep_grid(kw["sigma"], kw["A"], kw["B"], z),
    "split": lambda kw, z: general_split_grid(kw["split"], z),
    "laplace": lambda kw, z: laplace_rep_grid(kw["A"], kw["B"], z, kw.get("variant", "q_q")),
    "cosine": lambda kw, z: cosine_rep_grid(kw["A"], kw["B"], z, kw.get("variant", "psi_gt_half")),
    "small_p": lambda kw, z: small_p_rep_grid(kw["A"], kw["B"], kw["alphas"], z),
}


def _series_spec(kind, kw):
    if kind == "stieltjes":
        return HyperSpec((kw["sigma"],) + as_params(kw["A"]), kw["B"])
    if kind == "split":
        return kw["split"].full
    return HyperSpec(kw["A"], kw["B"])


def rep_vs_series(kind: str, z_grid, rel_tol: float = 1e-8, **kw) -> RepReport:
    """Compare a representation with direct summation on ``z_grid``.

    ``kind`` is one of ``stieltjes``, ``split``, ``laplace``, ``cosine``,
    ``small_p``; keyword arguments are those of the matching ``*_grid``
    function. A point fails when the discrepancy exceeds
    ``rel_tol * max(1, |series|)`` plus both error estimates; points where
    either side cannot be computed are recorded as failures too.
    """
    if kind not in _REPS:
        raise ValueError(f"unknown representation {kind!r}")
    z = _as_grid(z_grid)
    vals, errs, _, _ = _REPS[kind](kw, z)
    spec = _series_spec(kind, kw)
    ser = np.full(z.size, np.nan)
    serr = np.full(z.size, np.nan)
    failures = []
    for i, zi in enumerate(z):
        try:
            # series only: eval_pfq could hand back a representation value
            v, e, _ = pfq_grid(spec, [-float(zi)])
            ser[i], serr[i] = v[0], e[0]
        except (NonConvergence, DomainError) as exc:
            failures.append({"z": float(zi), "reason": f"series: {exc}"})
    diff = np.abs(vals - ser)
    budget = rel_tol * np.maximum(1.0, np.abs(ser)) + errs + serr
    for i in np.flatnonzero(np.isfinite(ser) & ~(diff <= budget)):
        failures.append({"z": float(z[i]), "rep": float(vals[i]), "series": float(ser[i]), "diff": float(diff[i])})
    ok = np.isfinite(ser)
    rel = diff[ok] / np.maximum(np.abs(ser[ok]), 1e-300)
    return RepReport(
        name=kind,
        z=z.tolist(),
        rep=vals.tolist(),
        series=ser.tolist(),
        budget=budget.tolist(),
        max_abs=float(np.max(diff[ok])) if ok.any() else math.nan,
        max_rel=float(np.max(rel)) if ok.any() else math.nan,
        failures=failures,
    )
