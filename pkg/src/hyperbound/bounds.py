"""Two-sided elementary envelopes for pFq with hypothesis certificates.

Every function returns a :class:`BoundCertificate`. The envelopes are
always computed, even when a hypothesis fails; in that case the bound is
advisory and ``certificate.gated(name)`` is False. When the function can
be evaluated at the same point, ``reference_value`` holds it.

Families
--------
luke
    qFq(A; B; x), x >= 0, in terms of ``f1 = prod a/b`` (and ``f2``).
stieltjes
    q+1Fq(sigma, A; B; x) for 0 <= x < 1, or at ``-x`` for x >= 0.
jensen
    qFq(A; B; -x) for all real x under kernel positivity.
p_lt_q
    Two exponential upper envelopes for pFq, p < q.
bessel / f01
    Sandwiches for q-1Fq and 0F1 that follow the true ``exp(2 sqrt x)`` growth.
"""
from __future__ import annotations

import math

from .errors import DomainError, HyperboundError, PoleError, ShapeError
from .params import (
    as_params,
    bessel_rates,
    check_weak_supermajorization,
    coeff_f,
    esym_dominance,
    ratio_chain_decreasing,
    symmetric_chain,
    symmetric_geq1,
    v_nonneg_check,
)
from .results import BoundCertificate, Hypothesis

STIELTJES_SIGNS = ("positive_arg", "negative_arg")


def _reference(A, B, x):
    """Value of pFq(A; B; x) if some method can compute it, else None."""
    from .representations import hyp_eval

    try:
        return hyp_eval(A, B, x).value
    except (HyperboundError, ArithmeticError, ValueError):
        return None


def _positive(A, B, extra=()):
    vals = list(A) + list(B) + list(extra)
    bad = [v for v in vals if not v > 0]
    return Hypothesis("positive_parameters", not bad, bad[0] if bad else None)


def _kernel_positivity(A, B):
    """``v(t) >= 0`` on (0, 1], accepted through weak supermajorization or the scan."""
    weak = None
    if all(v > 0 for v in A + B):
        m = check_weak_supermajorization(A, B)
        weak = m.weak
    vc = v_nonneg_check(A, B)
    ok = bool(weak) or bool(vc.nonneg)
    return Hypothesis(
        "kernel_positivity", ok, {"weak_supermajorized": weak, "v_min": vc.v_min}
    )


def _f12(A, B):
    return coeff_f(A, B, 1), coeff_f(A, B, 2)


def _require_equal_lengths(A, B):
    if len(A) != len(B):
        raise ShapeError(f"need |A| = |B|, got {len(A)} and {len(B)}")


# ----------------------------------------------------------------------------
# Kummer type, positive argument


def luke_bounds(A, B, x: float, refined: bool = False) -> BoundCertificate:
    """Bounds for qFq(A; B; x), x >= 0.

    Plain: ``exp(f1 x) <= F <= 1 - f1 + f1 e^x``. Refined:
    ``1 + (f1^2/f2)(exp((f2/f1) x) - 1) <= F <= 1 - f2 + (f1 - f2) x + f2 e^x``.
    The lower bounds need the increasing chain of symmetric-polynomial
    ratios; the upper bounds only need every ratio to be at least 1.

    Examples
    --------
    >>> c = luke_bounds([1], [2], 1.0)
    >>> round(c.lower, 7), round(c.upper, 7)
    (1.6487213, 1.8591409)
    """
    A, B = as_params(A), as_params(B)
    _require_equal_lengths(A, B)
    if not x >= 0:
        raise DomainError("Luke bounds are stated for x >= 0")
    hyps = [
        Hypothesis("symmetric_chain", symmetric_chain(A, B)),
        Hypothesis("symmetric_geq1", symmetric_geq1(A, B)),
    ]
    f1, f2 = _f12(A, B)
    extra = {"f1": f1, "f2": f2}
    if not refined:
        lower = math.exp(f1 * x)
        upper = 1.0 - f1 + f1 * math.exp(x)
    else:
        if f2 == 0 or f1 == 0:
            raise PoleError("refined bounds divide by f1 and f2")
        lower = 1.0 + f1 * f1 / f2 * math.expm1(f2 / f1 * x)
        upper = 1.0 - f2 + (f1 - f2) * x + f2 * math.exp(x)
    return BoundCertificate(
        family="luke_refined" if refined else "luke",
        hypotheses=hyps,
        lower=lower,
        upper=upper,
        reference_value=_reference(A, B, x),
        gates={"lower": "symmetric_chain", "upper": "symmetric_geq1"},
        extra=extra,
    )


# ----------------------------------------------------------------------------
# Gauss type


def stieltjes_bounds(sigma, A, B, x: float, refined: bool = False, sign: str = "positive_arg") -> BoundCertificate:
    """Bounds for q+1Fq(sigma, A; B; +-x).

    ``positive_arg`` bounds the function at ``x`` for 0 <= x < 1 (Luke's
    bounds pushed through a Laplace transform in x). ``negative_arg``
    bounds it at ``-x`` for x >= 0 and needs kernel positivity;
    ``refined`` is only available for ``positive_arg``.

    Examples
    --------
    >>> c = stieltjes_bounds(1, [1], [2], 1.0, sign="negative_arg")
    >>> round(c.lower, 7), round(c.upper, 7)
    (0.6666667, 0.75)
    """
    A, B = as_params(A), as_params(B)
    _require_equal_lengths(A, B)
    if sign not in STIELTJES_SIGNS:
        raise ValueError(f"sign must be one of {STIELTJES_SIGNS}")
    if not sigma > 0:
        raise DomainError("sigma must be positive")
    f1, f2 = _f12(A, B)
    extra = {"f1": f1, "f2": f2, "sigma": sigma}
    full = (sigma,) + A
    if sign == "positive_arg":
        if not 0 <= x < 1:
            raise DomainError("positive-argument bounds need 0 <= x < 1")
        hyps = [
            Hypothesis("symmetric_chain", symmetric_chain(A, B)),
            Hypothesis("symmetric_geq1", symmetric_geq1(A, B)),
        ]
        gates = {"lower": "symmetric_chain", "upper": "symmetric_geq1"}
        if not refined:
            lower = (1.0 - f1 * x) ** -sigma if f1 * x < 1 else math.inf
            upper = 1.0 - f1 + f1 * (1.0 - x) ** -sigma
        else:
            if f2 == 0 or f1 == 0:
                raise PoleError("refined bounds divide by f1 and f2")
            g = f1 * f1 / f2
            base = 1.0 - f2 * x / f1
            lower = 1.0 - g + g * base**-sigma if base > 0 else math.inf
            upper = 1.0 - f2 + sigma * (f1 - f2) * x + f2 * (1.0 - x) ** -sigma
        ref = _reference(full, B, x)
    else:
        if refined:
            raise ValueError("no refined negative-argument bounds")
        if not x >= 0:
            raise DomainError("negative-argument bounds take x >= 0 (the function is evaluated at -x)")
        hyps = [_positive(A, B), _kernel_positivity(A, B)]
        gates = {"lower": ("positive_parameters", "kernel_positivity"), "upper": ("positive_parameters", "kernel_positivity")}
        lower = (1.0 + f1 * x) ** -sigma
        upper = 1.0 - f1 + f1 * (1.0 + x) ** -sigma
        ref = _reference(full, B, -x)
    fam = "stieltjes_" + sign + ("_refined" if refined else "")
    return BoundCertificate(fam, hyps, lower, upper, ref, gates, extra)


def jensen_bounds(A, B, x: float) -> BoundCertificate:
    """``exp(-f1 x) <= qFq(A; B; -x) <= 1 - f1 + f1 exp(-x)`` for real x.

    Needs positive parameters and ``v(t) >= 0`` on (0, 1]; the lower bound
    is Jensen's inequality for the kernel measure, the upper its converse
    on [0, 1].
    """
    A, B = as_params(A), as_params(B)
    _require_equal_lengths(A, B)
    hyps = [_positive(A, B), _kernel_positivity(A, B)]
    f1 = coeff_f(A, B, 1)
    gate = ("positive_parameters", "kernel_positivity")
    return BoundCertificate(
        family="jensen",
        hypotheses=hyps,
        lower=math.exp(-f1 * x),
        upper=1.0 - f1 + f1 * math.exp(-x),
        reference_value=_reference(A, B, -x),
        gates={"lower": gate, "upper": gate},
        extra={"f1": f1},
    )


# ----------------------------------------------------------------------------
# Bessel type, positive argument


def upper_bounds_p_lt_q(A, B, x: float) -> BoundCertificate:
    """Two exponential upper envelopes for pFq(A; B; x), p < q, x >= 0.

    ``upper = 1 - f1 + f1 e^x`` (symmetric-polynomial dominance) and
    ``extra['upper_exp'] = exp(f1 x)`` (decreasing coefficient ratio). Both
    grow far too fast for large x; ``extra['upper_over_reference']``
    reports by how much.
    """
    A, B = as_params(A), as_params(B)
    if not len(A) < len(B):
        raise ShapeError("need p < q")
    if not x >= 0:
        raise DomainError("bounds are stated for x >= 0")
    hyps = [
        _positive(A, B),
        Hypothesis("esym_dominance", esym_dominance(A, B)),
        Hypothesis("ratio_chain_decreasing", ratio_chain_decreasing(A, B)),
    ]
    f1 = coeff_f(A, B, 1)
    upper = 1.0 - f1 + f1 * math.exp(x)
    upper_exp = math.exp(f1 * x)
    ref = _reference(A, B, x)
    extra = {"f1": f1, "upper_exp": upper_exp}
    if ref:
        extra["upper_over_reference"] = upper / ref
        extra["upper_exp_over_reference"] = upper_exp / ref
    return BoundCertificate(
        family="p_lt_q",
        hypotheses=hyps,
        lower=None,
        upper=upper,
        reference_value=ref,
        gates={
            "upper": ("positive_parameters", "esym_dominance"),
            "upper_exp": ("positive_parameters", "ratio_chain_decreasing"),
        },
        extra=extra,
    )


def f01_lower(c: float, x: float) -> float:
    s = math.sqrt(4.0 * x + c * c)
    # exp(s - c) * ((c + s) / (2c))^(-c), in log form
    return math.exp(s - c - c * math.log((c + s) / (2.0 * c)))


def f01_upper(c: float, x: float) -> float:
    s = math.sqrt(4.0 * x + (c + 1.0) ** 2)
    if c == 1.0:
        # exponent 1 - c vanishes; the power is exactly 1
        return math.exp(s - 2.0)
    return math.exp(s - c - 1.0 + (1.0 - c) * math.log((c - 1.0 + s) / (2.0 * c)))


def f01_bounds(c: float, x: float) -> BoundCertificate:
    """Elementary sandwich for 0F1(-; c; x), c > 0, x >= 0.

    Obtained by integrating Amos-type bounds on the Bessel ratio
    ``I_c / I_(c-1)``.

    Examples
    --------
    >>> b = f01_bounds(2.0, 0.0)
    >>> b.lower, b.upper
    (1.0, 1.0)
    """
    if not c > 0:
        raise DomainError("c must be positive")
    if not x >= 0:
        raise DomainError("x must be nonnegative")
    return BoundCertificate(
        family="f01",
        hypotheses=[Hypothesis("positive_parameters", True, None)],
        lower=f01_lower(c, x),
        upper=f01_upper(c, x),
        reference_value=_reference((), (c,), x),
        gates={},
        extra={"c": c},
    )


def bessel_bounds(A, B, x: float) -> BoundCertificate:
    """Sandwich for q-1Fq(A; B; x), x >= 0, through 0F1 comparisons.

    With the rate constants ``c >= d`` of :func:`hyperbound.params.bessel_rates`
    the coefficients satisfy ``1/(c)_n <= f_n <= 1/(d)_n``, so the function
    lies between 0F1(-; c; x) and 0F1(-; d; x); the f01 envelopes finish
    the job. The upper bound needs ``d > 0`` and is set to None otherwise.
    """
    A, B = as_params(A), as_params(B)
    if len(A) != len(B) - 1:
        raise ShapeError(f"need |A| = |B| - 1, got |A|={len(A)}, |B|={len(B)}")
    if not x >= 0:
        raise DomainError("x must be nonnegative")
    rates = bessel_rates(A, B)
    hyps = [
        _positive(A, B),
        Hypothesis("d_positive", rates.d_positive, rates.d),
    ]
    upper = f01_upper(rates.d, x) if rates.d_positive else None
    return BoundCertificate(
        family="bessel",
        hypotheses=hyps,
        lower=f01_lower(rates.c, x),
        upper=upper,
        reference_value=_reference(A, B, x),
        gates={"lower": "positive_parameters", "upper": ("positive_parameters", "d_positive")},
        extra={"c": rates.c, "d": rates.d, "d_positive": rates.d_positive},
    )


FAMILIES = {
    "luke": lambda A, B, x, sigma=None: luke_bounds(A, B, x, False),
    "luke_refined": lambda A, B, x, sigma=None: luke_bounds(A, B, x, True),
    "stieltjes_positive_arg": lambda A, B, x, sigma=1.0: stieltjes_bounds(sigma, A, B, x, False, "positive_arg"),
    "stieltjes_positive_arg_refined": lambda A, B, x, sigma=1.0: stieltjes_bounds(sigma, A, B, x, True, "positive_arg"),
    "stieltjes_negative_arg": lambda A, B, x, sigma=1.0: stieltjes_bounds(sigma, A, B, x, False, "negative_arg"),
    "jensen": lambda A, B, x, sigma=None: jensen_bounds(A, B, x),
    "p_lt_q": lambda A, B, x, sigma=None: upper_bounds_p_lt_q(A, B, x),
    "bessel": lambda A, B, x, sigma=None: bessel_bounds(A, B, x),
}


def certify(family: str, A, B, x: float, sigma=None) -> BoundCertificate:
    """Dispatch by family name (``f01`` takes ``c = B[0]``)."""
    if family == "f01":
        B = as_params(B)
        if len(B) != 1 or as_params(A):
            raise ShapeError("f01 takes A = () and a single B entry c")
        return f01_bounds(B[0], x)
    if family not in FAMILIES:
        raise ValueError(f"unknown bound family {family!r}")
    if sigma is None:
        return FAMILIES[family](A, B, x)
    return FAMILIES[family](A, B, x, sigma)
