"""Double-exponential quadrature for the representation integrals.

``integrate_01`` is tanh-sinh on [0, 1]; ``integrate_0inf`` is exp-sinh on
[0, inf). Both halve the step until two successive levels agree, reuse the
nodes of coarser levels, and accept vector-valued integrands so one kernel
evaluation can serve a whole grid of arguments.

Nodes near t = 1 are handed to the integrand together with ``1 - t``
computed without cancellation, which matters for ``(1 - t)^(psi - 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence
from .results import EvalResult

_U = 2.0**-53
_HALF_PI = 0.5 * math.pi
# largest exponent allowed in the node maps (keeps 1 - t above the underflow threshold)
_MAX_EXPONENT = 700.0


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-12
    abs_tol: float = 1e-15
    max_levels: int = 10
    endpoint_exponents: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if not 1 <= self.max_levels <= 12:
            raise ValueError("max_levels must lie in 1..12")

    def with_exponents(self, left, right):
        return QuadratureConfig(self.rel_tol, self.abs_tol, self.max_levels, (left, right))


DEFAULT_CONFIG = QuadratureConfig()


def _log_budget(cfg):
    return math.log(1.0 / (1e-3 * min(cfg.abs_tol, cfg.rel_tol)))


def _half_width_01(cfg):
    """Truncation point U so that the cut end pieces are below tolerance."""
    L = _log_budget(cfg)
    widths = []
    for alpha in cfg.endpoint_exponents:
        strength = max(1.0 + alpha, 1e-3)
        v = min(L / strength, _MAX_EXPONENT)
        widths.append(math.asinh(v / math.pi))
    return max(widths)


def _nodes_01(u):
    """tanh-sinh nodes: t, 1 - t and dt/du for an array of u."""
    v = math.pi * np.sinh(u)
    # t = 1/(1+e^{-v}), w = 1 - t = 1/(1+e^{v})
    with np.errstate(over="ignore"):
        t = 1.0 / (1.0 + np.exp(-v))
        w = 1.0 / (1.0 + np.exp(v))
        e = np.exp(-np.abs(v))
    dt = math.pi * np.cosh(u) * e / (1.0 + e) ** 2
    return t, w, dt


def _level_sum(f, u, h, nodes, complement, shape_box):
    t, w, dt = nodes(u)
    vals = f(t, w) if complement else f(t)
    vals = np.asarray(vals, dtype=float)
    if vals.ndim == 1:
        vals = vals[:, None]
    shape_box.append(vals.shape[1:])
    wts = (h * dt)[:, None]
    return np.sum(wts * vals, axis=0), np.sum(np.abs(wts * vals), axis=0)


def _de_integrate(f, half_width_lo, half_width_hi, nodes, cfg, complement, control=None):
    box = []
    h = 1.0
    u = np.arange(-math.floor(half_width_lo), math.floor(half_width_hi) + 1, dtype=float)
    total, mag = _level_sum(f, u, h, nodes, complement, box)
    n_used = u.size
    prev = None
    est = total
    for level in range(1, cfg.max_levels + 1):
        h *= 0.5
        lo = -math.floor(half_width_lo / h)
        hi = math.floor(half_width_hi / h)
        j = np.arange(lo, hi + 1)
        j = j[j % 2 != 0]
        u = j * h
        s, m = _level_sum(f, u, h, nodes, complement, box)
        n_used += u.size
        total = 0.5 * total + s
        mag = 0.5 * mag + m
        prev, est = est, total
        diff = np.abs(est - prev)
        floor = 10.0 * _U * mag
        err = diff + floor
        # a change below the rounding floor cannot shrink further; accept it
        goal = np.maximum(np.maximum(cfg.abs_tol, cfg.rel_tol * np.abs(est)), floor)
        if level >= 3 and np.all((diff <= goal)[:control]):
            return est, err, n_used
    raise NoConvergence(
        f"quadrature did not settle after {cfg.max_levels} levels"
        f" (last difference {np.max(np.abs(est - prev)):.3g})"
    )


def integrate_01_vec(f, cfg=DEFAULT_CONFIG, complement=False, leading_at_one=None, control=None):
    """Vector-valued tanh-sinh rule; returns ``(values, abs_err, nodes)``.

    ``f`` receives the node array ``t`` (and ``1 - t`` when ``complement``)
    and returns shape ``(n,)`` or ``(n, m)``.

    ``leading_at_one = (alpha, c)`` declares ``f ~ c (1-t)^alpha`` at t = 1.
    That term is integrated exactly and only the remainder goes through the
    rule, which matters once ``alpha`` is close to -1: the cut at the
    smallest representable ``1 - t`` would otherwise lose ``w0^(1+alpha)``.

    Only the first ``control`` columns take part in the stopping test; the
    rest (error companions, say) ride along on the same nodes.
    """
    if leading_at_one is None:
        U = _half_width_01(cfg)
        return _de_integrate(f, U, U, _nodes_01, cfg, complement, control)
    alpha, c = leading_at_one
    if not alpha > -1.0:
        raise ValueError("leading exponent at t = 1 must exceed -1")
    c = np.atleast_1d(np.asarray(c, dtype=float))

    def g(t, w):
        v = np.asarray(f(t, w) if complement else f(t), dtype=float)
        lead = np.power(w, alpha)[:, None] * c[None, :]
        return (v if v.ndim == 2 else v[:, None]) - lead

    inner = cfg.with_exponents(cfg.endpoint_exponents[0], alpha + 1.0)
    U = _half_width_01(inner)
    val, err, n = _de_integrate(g, U, U, _nodes_01, inner, True, control)
    exact = c / (alpha + 1.0)
    return val + exact, err + 4.0 * _U * np.abs(exact), n


def integrate_01(f, cfg=DEFAULT_CONFIG, complement=False, leading_at_one=None) -> EvalResult:
    """Integrate ``f`` over [0, 1] with level-doubling tanh-sinh.

    Algebraic or logarithmic endpoint singularities are fine; declare their
    strength in ``cfg.endpoint_exponents`` (e.g. ``psi - 1`` at t = 1) so the
    rule reaches close enough to the endpoints.
    """
    val, err, n = integrate_01_vec(f, cfg, complement, leading_at_one)
    return EvalResult(float(val[0]), float(err[0]), int(n), "tanh-sinh")


def _nodes_0inf_factory(scale):
    def nodes(u):
        s = _HALF_PI * np.sinh(u)
        with np.errstate(over="ignore", under="ignore"):
            t = scale * np.exp(s)
        dt = t * _HALF_PI * np.cosh(u)
        return t, None, dt

    return nodes


def integrate_0inf_vec(f, decay_scale=1.0, cfg=DEFAULT_CONFIG, control=None):
    """Vector-valued exp-sinh rule on [0, inf).

    ``cfg.endpoint_exponents`` gives the power of t at 0 and the power
    multiplying ``exp(-t / decay_scale)`` at infinity.
    """
    if not decay_scale > 0:
        raise ValueError("decay_scale must be positive")
    L = _log_budget(cfg)
    a0, ainf = cfg.endpoint_exponents
    left = min(L / max(1.0 + a0, 1e-3), _MAX_EXPONENT)
    u_lo = math.asinh(left / _HALF_PI)
    tmax = L + max(ainf, 0.0) * math.log(1.0 + L + max(ainf, 0.0)) + 10.0
    u_hi = math.asinh(math.log(tmax) / _HALF_PI)
    nodes = _nodes_0inf_factory(decay_scale)

    def g(t, w):
        return f(t)

    return _de_integrate(g, u_lo, u_hi, nodes, cfg, True, control)


def integrate_0inf(f, decay_scale: float = 1.0, cfg=DEFAULT_CONFIG) -> EvalResult:
    """Integrate an exponentially decaying ``f`` over [0, inf) (exp-sinh)."""
    val, err, n = integrate_0inf_vec(f, decay_scale, cfg)
    return EvalResult(float(val[0]), float(err[0]), int(n), "exp-sinh")
